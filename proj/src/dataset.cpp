#include "intentbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "intentbench/errors.hpp"

namespace intentbench {

namespace {

using json = nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCategory::data, "cannot open " + path.string());
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCategory::data, "cannot write " + path.string());
  }
  return out;
}

LabeledUtterance make_utterance(std::string text, const std::string& label,
                                std::size_t record) {
  if (text.empty()) throw EmptyText(record);
  const auto parsed = parse_label(label);
  if (!parsed) throw UnknownLabel(label, record);
  return LabeledUtterance{std::move(text), *parsed};
}

Corpus load_jsonl(std::istream& in, const std::string& provenance) {
  Corpus corpus;
  corpus.provenance = provenance;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // tolerate blank lines
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      throw MalformedRecord(record, "not a JSON object");
    }
    if (!j.contains("text") || !j["text"].is_string()) {
      throw MalformedRecord(record, "missing string field \"text\"");
    }
    if (!j.contains("label") || !j["label"].is_string()) {
      throw MalformedRecord(record, "missing string field \"label\"");
    }
    corpus.items.push_back(make_utterance(j["text"].get<std::string>(),
                                          j["label"].get<std::string>(),
                                          record));
  }
  return corpus;
}

// RFC-4180 reader: quoted fields may contain commas, doubled quotes and
// newlines.
std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  char c;
  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(fields));
    fields.clear();
  };
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty() && !field_started) {
          in_quotes = true;
          field_started = true;
        } else {
          field.push_back(c);
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw MalformedRecord(records.size() + 1, "unterminated quoted field");
  }
  if (field_started || !fields.empty() || !field.empty()) {
    end_record();
  }
  return records;
}

Corpus load_csv(std::istream& in, const std::string& provenance) {
  const auto records = read_csv_records(in);
  if (records.empty()) {
    throw MalformedRecord(1, "missing text,label header row");
  }
  const auto& header = records.front();
  if (header.size() != 2 || header[0] != "text" || header[1] != "label") {
    throw MalformedRecord(1, "header row must be text,label");
  }
  Corpus corpus;
  corpus.provenance = provenance;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& row = records[i];
    if (row.size() != 2) {
      throw MalformedRecord(i, "expected 2 fields, found " +
                                   std::to_string(row.size()));
    }
    corpus.items.push_back(make_utterance(row[0], row[1], i));
  }
  return corpus;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

std::array<std::size_t, kNumClasses> Corpus::class_counts() const {
  std::array<std::size_t, kNumClasses> counts{};
  for (const auto& item : items) ++counts[label_index(item.label)];
  return counts;
}

CorpusFormat corpus_format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? CorpusFormat::csv : CorpusFormat::jsonl;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  auto in = open_input(path);
  return format == CorpusFormat::jsonl ? load_jsonl(in, path.string())
                                       : load_csv(in, path.string());
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 CorpusFormat format) {
  auto out = open_output(path);
  if (format == CorpusFormat::jsonl) {
    for (const auto& item : corpus.items) {
      json j;
      j["text"] = item.text;
      j["label"] = std::string(label_name(item.label));
      out << j.dump() << '\n';
    }
  } else {
    out << "text,label\n";
    for (const auto& item : corpus.items) {
      out << csv_quote(item.text) << ','
          << std::string(label_name(item.label)) << '\n';
    }
  }
  if (!out) {
    throw Error(ErrorCategory::data, "write failed: " + path.string());
  }
}

namespace {

// Floor quotas plus largest-remainder assignment toward the exact total, so
// repeated runs produce identical class allocations.
std::array<std::size_t, kNumClasses> allocate_counts(
    const std::array<std::size_t, kNumClasses>& available,
    const std::array<double, kNumClasses>& fractions, std::size_t total) {
  std::array<std::size_t, kNumClasses> out{};
  std::array<double, kNumClasses> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const double quota = fractions[c];
    out[c] = std::min<std::size_t>(available[c],
                                   static_cast<std::size_t>(std::floor(quota)));
    remainder[c] = quota - std::floor(quota);
    assigned += out[c];
  }
  while (assigned < total) {
    int best = -1;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      if (out[c] >= available[c]) continue;
      if (best < 0 || remainder[c] > remainder[best]) best = static_cast<int>(c);
    }
    if (best < 0) break;  // everything exhausted
    ++out[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  return out;
}

}  // namespace

std::pair<Corpus, Corpus> stratified_split(const Corpus& corpus,
                                           const SplitConfig& cfg) {
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw Error(ErrorCategory::config,
                "train_fraction must be in (0,1), got " +
                    std::to_string(cfg.train_fraction));
  }
  const std::size_t n = corpus.size();
  const auto target_total =
      static_cast<std::size_t>(std::llround(cfg.train_fraction * n));
  std::mt19937_64 rng(cfg.seed);
  std::vector<bool> in_train(n, false);

  if (cfg.stratified) {
    std::array<std::vector<std::size_t>, kNumClasses> by_class;
    for (std::size_t i = 0; i < n; ++i) {
      by_class[label_index(corpus.items[i].label)].push_back(i);
    }
    std::array<std::size_t, kNumClasses> counts{};
    std::array<double, kNumClasses> quotas{};
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      counts[c] = by_class[c].size();
      if (counts[c] == 1) {
        throw ClassTooSmall("class " + std::string(label_name(label_at(c))) +
                            " has a single member; stratified split needs at "
                            "least 2");
      }
      quotas[c] = cfg.train_fraction * static_cast<double>(counts[c]);
    }
    const auto take = allocate_counts(counts, quotas, target_total);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      auto idx = by_class[c];
      std::shuffle(idx.begin(), idx.end(), rng);
      for (std::size_t j = 0; j < take[c]; ++j) in_train[idx[j]] = true;
    }
  } else {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t j = 0; j < std::min(target_total, n); ++j) {
      in_train[idx[j]] = true;
    }
  }

  Corpus train, test;
  train.provenance = corpus.provenance + "#train";
  test.provenance = corpus.provenance + "#test";
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? train : test).items.push_back(corpus.items[i]);
  }
  return {std::move(train), std::move(test)};
}

namespace {

using Pool = std::vector<std::string_view>;

std::string_view pick(std::mt19937_64& rng, const Pool& pool) {
  std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

std::size_t pick_index(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  return d(rng);
}

const Pool kTopics = {
    "machine learning", "the quarterly report",  "combustion engines",
    "crash tests",      "wind tunnels",          "battery chemistry",
    "road regulations", "emission standards",    "tyre wear",
    "the new intranet", "expense claims",        "the coffee machine",
    "photosynthesis",   "the holiday calendar",  "gears and clutches"};

const Pool kSnippets = {
    "los resultados del ensayo fueron positivos en todas las fases",
    "the committee agreed to postpone the decision until next quarter",
    "el nuevo procedimiento entra en vigor el lunes",
    "safety margins were recalculated after the second iteration",
    "la reunion se ha movido a la sala grande",
    "output torque stayed within the expected envelope"};

const Pool kLanguages = {"English", "Spanish",  "French",  "German",
                         "Italian", "Catalan",  "Portuguese"};

const Pool kWords = {"clutch", "perdurar", "torque", "deadline", "chasis",
                     "benchmark", "enhorabuena", "viscosity"};

const Pool kCities = {"Barcelona", "Madrid",  "Tarragona", "Girona",
                      "Valencia",  "Seville", "Bilbao"};

const Pool kDays = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                    "Friday", "tomorrow", "next week"};

const Pool kHours = {"9:00", "10:30", "12:00", "14:00", "16:30"};

const Pool kRestaurants = {"La Plaza", "Can Roca", "El Raco", "The Garden"};

const Pool kPlaces = {"test track", "proving ground", "showroom",
                      "headquarters", "climate lab"};

const Pool kDocStems = {"quarterly_report", "meeting_minutes", "crash_summary",
                        "user_manual",      "contract_draft",  "hr_handbook",
                        "safety_protocol",  "test_plan",       "budget_outline"};

const Pool kDocExts = {".pdf", ".docx", ".pptx", ".xlsx", ".txt"};

const Pool kPrefixes = {"", "", "", "hi, ", "hello, ", "hola, ", "please, ",
                        "good morning, "};

const Pool kSuffixes = {"", "", "", ".", "!", ", please", ", thanks"};

std::string doc_name(std::mt19937_64& rng) {
  std::string name(pick(rng, kDocStems));
  if (pick_index(rng, 3) == 0) {
    name += "_v" + std::to_string(1 + pick_index(rng, 9));
  }
  name += pick(rng, kDocExts);
  return name;
}

std::string conversation_text(std::mt19937_64& rng) {
  switch (pick_index(rng, 14)) {
    case 0:
      return "how are you today? anything new?";
    case 1:
      return std::string("can you explain what ") + std::string(pick(rng, kTopics)) +
             " means";
    case 2:
      return std::string("what is the difference between ") +
             std::string(pick(rng, kTopics)) + " and " +
             std::string(pick(rng, kTopics));
    case 3:
      return std::string("summarise this for me: ") +
             std::string(pick(rng, kSnippets));
    case 4:
      return std::string("could you give me a short summary of the following? ") +
             std::string(pick(rng, kSnippets));
    case 5:
      return std::string("what does the word '") + std::string(pick(rng, kWords)) +
             "' mean in " + std::string(pick(rng, kLanguages));
    case 6:
      // inline text translation stays conversational
      return std::string("translate this sentence into ") +
             std::string(pick(rng, kLanguages)) + ": " +
             std::string(pick(rng, kSnippets));
    case 7:
      return std::string("i have a question about ") +
             std::string(pick(rng, kTopics));
    case 8:
      return "thanks a lot, that was really helpful";
    case 9:
      return std::string("tell me a fun fact about ") +
             std::string(pick(rng, kTopics));
    case 10:
      return std::string("what time is it in ") + std::string(pick(rng, kCities));
    case 11:
      return std::string("¿puedes resumir este texto? ") +
             std::string(pick(rng, kSnippets));
    case 12:
      return std::string("explain ") + std::string(pick(rng, kTopics)) +
             " in simple terms";
    default:
      return "good morning! what can you do";
  }
}

std::string services_text(std::mt19937_64& rng) {
  const auto n_people = std::to_string(2 + pick_index(rng, 10));
  switch (pick_index(rng, 12)) {
    case 0:
      return std::string("book me a hotel room in ") +
             std::string(pick(rng, kCities)) + " for " +
             std::to_string(1 + pick_index(rng, 5)) + " nights";
    case 1:
      return std::string("i need to reserve a meeting room for ") +
             std::string(pick(rng, kDays)) + " at " +
             std::string(pick(rng, kHours));
    case 2:
      return std::string("can you book a table for ") + n_people +
             " at " + std::string(pick(rng, kRestaurants));
    case 3:
      return std::string("reserve two cinema tickets for ") +
             std::string(pick(rng, kDays)) + " evening";
    case 4:
      return std::string("book a taxi from the airport to ") +
             std::string(pick(rng, kCities)) + " centre";
    case 5:
      return std::string("arrange a shuttle for ") + n_people + " people on " +
             std::string(pick(rng, kDays));
    case 6:
      return std::string("necesito reservar una sala de reuniones para el ") +
             std::string(pick(rng, kDays));
    case 7:
      return std::string("check availability for the gym on ") +
             std::string(pick(rng, kDays));
    case 8:
      return std::string("book a parking spot for ") +
             std::string(pick(rng, kDays)) + " morning";
    case 9:
      return std::string("schedule a visit to the ") +
             std::string(pick(rng, kPlaces)) + " for " +
             std::string(pick(rng, kDays));
    case 10:
      return std::string("i would like to order catering for ") + n_people +
             " people on " + std::string(pick(rng, kDays));
    default:
      return std::string("can you find me cinema showtimes in ") +
             std::string(pick(rng, kCities)) + " for " +
             std::string(pick(rng, kDays));
  }
}

std::string translation_text(std::mt19937_64& rng) {
  const std::string file = doc_name(rng);
  const std::string lang(pick(rng, kLanguages));
  switch (pick_index(rng, 9)) {
    case 0:
      return "translate the document " + file + " to " + lang;
    case 1:
      return "please translate " + file + " into " + lang;
    case 2:
      return "i need " + file + " translated to " + lang;
    case 3:
      return "can you translate the attached file " + file + " to " + lang;
    case 4:
      return "traduce el documento " + file + " al " + lang;
    case 5:
      return "translate the report " + file + " from " +
             std::string(pick(rng, kLanguages)) + " to " + lang;
    case 6:
      return "could you translate the whole document " + file + " to " + lang +
             ", without summarising it";
    case 7:
      return "i am sending " + file + ", translate it to " + lang +
             " keeping the format";
    default:
      return "need the file " + file + " in " + lang + ", full translation";
  }
}

}  // namespace

Corpus synthesize_corpus(std::size_t n_total,
                         const std::array<double, kNumClasses>& class_mix,
                         std::uint64_t seed) {
  double sum = 0.0;
  for (double f : class_mix) {
    if (f < 0.0) throw BadMix("class mix fractions must be non-negative");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw BadMix("class mix fractions must sum to 1, got " +
                 std::to_string(sum));
  }
  if (n_total < kNumClasses) {
    throw BadMix("n_total must be at least " + std::to_string(kNumClasses));
  }

  std::array<std::size_t, kNumClasses> unlimited{};
  unlimited.fill(n_total);
  std::array<double, kNumClasses> quotas{};
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    quotas[c] = class_mix[c] * static_cast<double>(n_total);
  }
  const auto counts = allocate_counts(unlimited, quotas, n_total);

  std::mt19937_64 rng(seed);
  std::vector<IntentLabel> labels;
  labels.reserve(n_total);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    labels.insert(labels.end(), counts[c], label_at(c));
  }
  std::shuffle(labels.begin(), labels.end(), rng);

  Corpus corpus;
  corpus.provenance = "synthetic:" + std::to_string(seed);
  corpus.items.reserve(n_total);
  for (IntentLabel label : labels) {
    std::string body;
    switch (label) {
      case IntentLabel::Conversation:
        body = conversation_text(rng);
        break;
      case IntentLabel::Services:
        body = services_text(rng);
        break;
      case IntentLabel::DocumentTranslation:
        body = translation_text(rng);
        break;
    }
    std::string text = std::string(pick(rng, kPrefixes)) + body +
                       std::string(pick(rng, kSuffixes));
    corpus.items.push_back({std::move(text), label});
  }
  return corpus;
}

}  // namespace intentbench
