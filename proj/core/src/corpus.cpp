#include "qattr/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qattr/error.hpp"
#include "qattr/rng.hpp"

namespace qattr {

using nlohmann::json;

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

std::vector<TaggedQuery> read_conll(std::istream& in, const AttributeSchema& schema) {
  std::vector<TaggedQuery> queries;
  TaggedQuery current;
  std::string line;
  std::size_t lineno = 0;

  auto flush = [&] {
    if (!current.tokens.empty()) {
      // validate IOB2 transitions eagerly; spans_from_tags throws on bad input
      spans_from_tags(current.tokens, current.tags);
      queries.push_back(std::move(current));
      current = {};
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.rfind("-DOCSTART-", 0) == 0) continue;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 4)
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(lineno) + ": expected 4 fields, got " +
                      std::to_string(fields.size()));
    current.tokens.push_back(fields[0]);
    current.pos.push_back(fields[1]);
    current.chunk.push_back(fields[2]);
    try {
      current.tags.push_back(parse_tag(schema, fields[3]));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidTag,
                  "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  flush();
  return queries;
}

void write_conll(std::ostream& out, const std::vector<TaggedQuery>& queries,
                 const AttributeSchema& schema) {
  for (const TaggedQuery& q : queries) {
    for (std::size_t i = 0; i < q.tokens.size(); ++i) {
      const std::string& pos = i < q.pos.size() ? q.pos[i] : std::string("-X-");
      const std::string& chunk = i < q.chunk.size() ? q.chunk[i] : std::string("-X-");
      out << q.tokens[i] << ' ' << pos << ' ' << chunk << ' '
          << tag_name(schema, q.tags[i]) << '\n';
    }
    out << '\n';
  }
}

std::string write_conll(const std::vector<TaggedQuery>& queries,
                        const AttributeSchema& schema) {
  std::ostringstream out;
  write_conll(out, queries, schema);
  return out.str();
}

const char* drop_reason_name(DropReason reason) {
  switch (reason) {
    case DropReason::NotInQuery: return "NotInQuery";
    case DropReason::Overlap: return "Overlap";
    case DropReason::UnknownKind: return "UnknownKind";
  }
  return "?";
}

const char* record_source_name(RecordSource source) {
  switch (source) {
    case RecordSource::Human: return "human";
    case RecordSource::Llm: return "llm";
    case RecordSource::Synthetic: return "synthetic";
  }
  return "?";
}

namespace {

DropReason parse_drop_reason(const std::string& s) {
  if (s == "NotInQuery") return DropReason::NotInQuery;
  if (s == "Overlap") return DropReason::Overlap;
  if (s == "UnknownKind") return DropReason::UnknownKind;
  throw Error(ErrorCode::MalformedJson, "unknown drop reason: " + s);
}

RecordSource parse_source(const std::string& s) {
  if (s == "human") return RecordSource::Human;
  if (s == "llm") return RecordSource::Llm;
  if (s == "synthetic") return RecordSource::Synthetic;
  throw Error(ErrorCode::MalformedJson, "unknown source: " + s);
}

json record_to_json(const AnnotationRecord& r) {
  json j;
  j["query"] = r.query;
  json pairs = json::array();
  for (const AttrPair& p : r.pairs) pairs.push_back({{"kind", p.kind}, {"value", p.value}});
  j["pairs"] = std::move(pairs);
  if (r.raw_response) j["raw_response"] = *r.raw_response;
  if (!r.clean_report.empty()) {
    json report = json::array();
    for (const CleanDecision& d : r.clean_report) {
      json item = {{"kind", d.pair.kind}, {"value", d.pair.value}, {"kept", d.kept}};
      if (d.reason) item["reason"] = drop_reason_name(*d.reason);
      report.push_back(std::move(item));
    }
    j["clean_report"] = std::move(report);
  }
  if (r.review_verdict) j["review_verdict"] = *r.review_verdict;
  j["source"] = record_source_name(r.source);
  return j;
}

AnnotationRecord record_from_json(const json& j) {
  AnnotationRecord r;
  r.query = j.at("query").get<std::string>();
  for (const json& p : j.at("pairs"))
    r.pairs.push_back({p.at("kind").get<std::string>(), p.at("value").get<std::string>()});
  if (j.contains("raw_response")) r.raw_response = j["raw_response"].get<std::string>();
  if (j.contains("clean_report")) {
    for (const json& item : j["clean_report"]) {
      CleanDecision d;
      d.pair = {item.at("kind").get<std::string>(), item.at("value").get<std::string>()};
      d.kept = item.at("kept").get<bool>();
      if (item.contains("reason")) d.reason = parse_drop_reason(item["reason"].get<std::string>());
      r.clean_report.push_back(std::move(d));
    }
  }
  if (j.contains("review_verdict")) r.review_verdict = j["review_verdict"].get<bool>();
  r.source = parse_source(j.at("source").get<std::string>());
  return r;
}

}  // namespace

std::vector<AnnotationRecord> read_annotations(std::istream& in) {
  std::vector<AnnotationRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw Error(ErrorCode::MalformedJson, "line " + std::to_string(lineno));
    try {
      records.push_back(record_from_json(j));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedJson,
                  "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

void write_annotations(std::ostream& out, const std::vector<AnnotationRecord>& records) {
  for (const AnnotationRecord& r : records) out << record_to_json(r).dump() << '\n';
}

std::string write_annotations(const std::vector<AnnotationRecord>& records) {
  std::ostringstream out;
  write_annotations(out, records);
  return out.str();
}

std::vector<EntitySpan> record_spans(const AnnotationRecord& record,
                                     const AttributeSchema& schema) {
  AlignResult aligned = align_values(tokenize(record.query), record.pairs, schema);
  if (!aligned.dropped.empty())
    throw Error(ErrorCode::SpanOutOfBounds,
                "record pairs do not align to query: " + record.query);
  std::vector<EntitySpan> spans = aligned.spans;
  std::sort(spans.begin(), spans.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  return spans;
}

TaggedQuery record_to_tagged(const AnnotationRecord& record,
                             const AttributeSchema& schema) {
  TaggedQuery q;
  q.tokens = tokenize(record.query);
  q.tags = tags_from_spans(q.tokens, record_spans(record, schema));
  return q;
}

AlignResult align_values(const std::vector<std::string>& tokens,
                         const std::vector<AttrPair>& pairs,
                         const AttributeSchema& schema) {
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const std::string& t : tokens) lower.push_back(lowercased(t));

  std::vector<bool> consumed(tokens.size(), false);
  AlignResult result;

  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const AttrPair& pair = pairs[pi];
    std::vector<std::string> value_tokens = tokenize(lowercased(pair.value));
    if (value_tokens.empty()) {
      result.dropped.push_back({pi, DropReason::NotInQuery});
      continue;
    }
    bool found_anywhere = false;
    std::optional<std::size_t> found_free;
    for (std::size_t start = 0; start + value_tokens.size() <= tokens.size(); ++start) {
      bool match = true;
      bool free = true;
      for (std::size_t k = 0; k < value_tokens.size(); ++k) {
        if (lower[start + k] != value_tokens[k]) {
          match = false;
          break;
        }
        if (consumed[start + k]) free = false;
      }
      if (!match) continue;
      found_anywhere = true;
      if (free) {
        found_free = start;
        break;
      }
    }
    if (!found_anywhere) {
      result.dropped.push_back({pi, DropReason::NotInQuery});
    } else if (!found_free) {
      result.dropped.push_back({pi, DropReason::Overlap});
    } else {
      std::size_t start = *found_free;
      std::size_t end = start + value_tokens.size() - 1;
      for (std::size_t k = start; k <= end; ++k) consumed[k] = true;
      std::string value;
      for (std::size_t k = start; k <= end; ++k) {
        if (k > start) value += ' ';
        value += tokens[k];
      }
      std::size_t kind = schema.find(pair.kind).value_or(
          schema.find_ci(pair.kind).value_or(schema.size()));
      if (kind == schema.size())
        throw Error(ErrorCode::BadSchema, "align_values: kind not in schema: " + pair.kind);
      result.spans.push_back({kind, start, end, std::move(value)});
      result.matched.push_back(pi);
    }
  }
  return result;
}

SplitResult split(const std::vector<AnnotationRecord>& records, const SplitSpec& spec) {
  if (spec.train < 0 || spec.dev < 0 || spec.test < 0 ||
      std::abs(spec.train + spec.dev + spec.test - 1.0) > 1e-9)
    throw Error(ErrorCode::BadFractions, "fractions must be non-negative and sum to 1");

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  fisher_yates(order, rng);

  std::size_t n = records.size();
  std::size_t n_train = static_cast<std::size_t>(std::llround(spec.train * static_cast<double>(n)));
  std::size_t n_dev = static_cast<std::size_t>(std::llround(spec.dev * static_cast<double>(n)));
  n_train = std::min(n_train, n);
  n_dev = std::min(n_dev, n - n_train);

  SplitResult result;
  for (std::size_t i = 0; i < n; ++i) {
    const AnnotationRecord& r = records[order[i]];
    if (i < n_train)
      result.train.push_back(r);
    else if (i < n_train + n_dev)
      result.dev.push_back(r);
    else
      result.test.push_back(r);
  }
  return result;
}

}  // namespace qattr
