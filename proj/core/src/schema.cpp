#include "qattr/schema.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "qattr/error.hpp"

namespace qattr {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
    case ErrorCode::OverlappingSpans: return "OverlappingSpans";
    case ErrorCode::SpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::InvalidTag: return "InvalidTag";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::EmptyLexicon: return "EmptyLexicon";
    case ErrorCode::BadFractions: return "BadFractions";
    case ErrorCode::BadGrammar: return "BadGrammar";
    case ErrorCode::RaggedDimensions: return "RaggedDimensions";
    case ErrorCode::NonNumericValue: return "NonNumericValue";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownTag: return "UnknownTag";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoProductTypes: return "NoProductTypes";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::EmptyHypotheses: return "EmptyHypotheses";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::EmptyPairs: return "EmptyPairs";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::OverlapWithinSide: return "OverlapWithinSide";
    case ErrorCode::BadSchema: return "BadSchema";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadModelFile: return "BadModelFile";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

std::string lowercased(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool equals_ci(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

namespace {

std::string trimmed(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string underscored(std::string_view name) {
  std::string out(name);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

std::string spaced(std::string_view name) {
  std::string out(name);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<AttributeKind> kinds)
    : kinds_(std::move(kinds)) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i].name.empty())
      throw Error(ErrorCode::BadSchema, "empty attribute name");
    if (!seen.insert(kinds_[i].name).second)
      throw Error(ErrorCode::BadSchema, "duplicate attribute name: " + kinds_[i].name);
    if (kinds_[i].is_product_type) {
      if (product_type_)
        throw Error(ErrorCode::BadSchema, "more than one product-type kind");
      product_type_ = i;
    }
  }
}

const AttributeSchema& AttributeSchema::canonical() {
  static const AttributeSchema schema{[] {
    std::vector<AttributeKind> kinds;
    for (const char* name :
         {"Brand", "Color", "Size", "Material", "Price Range", "Gender",
          "Age Group", "Condition", "Location", "Ingredients",
          "Dietary Preferences", "Cuisine Type", "Flavor",
          "Nutritional Information", "Deal", "Product Type", "Package"}) {
      kinds.push_back({name, std::string_view(name) == "Product Type"});
    }
    return AttributeSchema(std::move(kinds));
  }()};
  return schema;
}

AttributeSchema AttributeSchema::from_stream(std::istream& in) {
  std::vector<AttributeKind> kinds;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    AttributeKind kind;
    static const std::string suffix = "(product_type)";
    if (t.size() > suffix.size() && t.ends_with(suffix)) {
      kind.is_product_type = true;
      t = trimmed(t.substr(0, t.size() - suffix.size()));
    }
    kind.name = t;
    kinds.push_back(std::move(kind));
  }
  return AttributeSchema(std::move(kinds));
}

AttributeSchema AttributeSchema::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open schema file: " + path);
  return from_stream(in);
}

std::optional<std::size_t> AttributeSchema::find(std::string_view name) const {
  for (std::size_t i = 0; i < kinds_.size(); ++i)
    if (kinds_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> AttributeSchema::find_ci(std::string_view name) const {
  for (std::size_t i = 0; i < kinds_.size(); ++i)
    if (equals_ci(kinds_[i].name, name)) return i;
  return std::nullopt;
}

bool AttributeSchema::operator==(const AttributeSchema& other) const {
  if (kinds_.size() != other.kinds_.size()) return false;
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i].name != other.kinds_[i].name ||
        kinds_[i].is_product_type != other.kinds_[i].is_product_type)
      return false;
  }
  return true;
}

void AttributeSchema::write(std::ostream& out) const {
  for (const auto& k : kinds_) {
    out << k.name;
    if (k.is_product_type) out << " (product_type)";
    out << "\n";
  }
}

std::vector<TagLabel> tag_alphabet(const AttributeSchema& schema) {
  std::vector<TagLabel> labels;
  labels.reserve(tag_count(schema));
  labels.push_back(TagLabel::outside());
  for (std::size_t k = 0; k < schema.size(); ++k) {
    labels.push_back(TagLabel::begin(k));
    labels.push_back(TagLabel::inside(k));
  }
  return labels;
}

std::size_t tag_count(const AttributeSchema& schema) {
  return 2 * schema.size() + 1;
}

int tag_index(const TagLabel& tag) {
  switch (tag.prefix) {
    case TagLabel::Prefix::O: return 0;
    case TagLabel::Prefix::B: return static_cast<int>(1 + 2 * tag.kind);
    case TagLabel::Prefix::I: return static_cast<int>(2 + 2 * tag.kind);
  }
  return 0;
}

TagLabel tag_from_index(const AttributeSchema& schema, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= tag_count(schema))
    throw Error(ErrorCode::UnknownTag, "tag index out of range");
  if (index == 0) return TagLabel::outside();
  std::size_t kind = static_cast<std::size_t>(index - 1) / 2;
  return (index % 2 == 1) ? TagLabel::begin(kind) : TagLabel::inside(kind);
}

std::string tag_name(const AttributeSchema& schema, const TagLabel& tag) {
  if (tag.is_o()) return "O";
  if (tag.kind >= schema.size())
    throw Error(ErrorCode::UnknownTag, "kind index out of range");
  const char* prefix = tag.prefix == TagLabel::Prefix::B ? "B-" : "I-";
  return prefix + underscored(schema.kind(tag.kind).name);
}

TagLabel parse_tag(const AttributeSchema& schema, std::string_view text) {
  if (text == "O") return TagLabel::outside();
  if (text.size() < 3 || (text[0] != 'B' && text[0] != 'I') || text[1] != '-')
    throw Error(ErrorCode::InvalidTag, "unparseable tag: " + std::string(text));
  std::string name = spaced(text.substr(2));
  auto kind = schema.find(name);
  if (!kind)
    throw Error(ErrorCode::InvalidTag,
                "tag kind not in schema: " + std::string(text));
  return text[0] == 'B' ? TagLabel::begin(*kind) : TagLabel::inside(*kind);
}

std::string TaggedQuery::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<EntitySpan> spans_from_tags(const std::vector<std::string>& tokens,
                                        const std::vector<TagLabel>& tags) {
  if (tokens.size() != tags.size())
    throw Error(ErrorCode::LengthMismatch, "tokens/tags length mismatch");
  std::vector<EntitySpan> spans;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const TagLabel& tag = tags[i];
    if (tag.is_o()) continue;
    if (tag.prefix == TagLabel::Prefix::I) {
      bool continues = i > 0 && !tags[i - 1].is_o() && tags[i - 1].kind == tag.kind;
      if (!continues)
        throw Error(ErrorCode::InvalidTransition,
                    "I tag without matching B/I at position " + std::to_string(i));
      EntitySpan& span = spans.back();
      span.end = i;
      span.value += ' ';
      span.value += tokens[i];
    } else {
      spans.push_back({tag.kind, i, i, tokens[i]});
    }
  }
  return spans;
}

std::vector<TagLabel> tags_from_spans(const std::vector<std::string>& tokens,
                                      const std::vector<EntitySpan>& spans) {
  std::vector<TagLabel> tags(tokens.size(), TagLabel::outside());
  std::vector<bool> covered(tokens.size(), false);
  for (const EntitySpan& span : spans) {
    if (span.start > span.end || span.end >= tokens.size())
      throw Error(ErrorCode::SpanOutOfBounds,
                  "span " + std::to_string(span.start) + ".." +
                      std::to_string(span.end) + " over " +
                      std::to_string(tokens.size()) + " tokens");
    for (std::size_t i = span.start; i <= span.end; ++i) {
      if (covered[i])
        throw Error(ErrorCode::OverlappingSpans,
                    "overlap at token " + std::to_string(i));
      covered[i] = true;
      tags[i] = i == span.start ? TagLabel::begin(span.kind)
                                : TagLabel::inside(span.kind);
    }
  }
  return tags;
}

}  // namespace qattr
