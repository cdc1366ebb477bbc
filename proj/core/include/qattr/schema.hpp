#ifndef QATTR_SCHEMA_HPP
#define QATTR_SCHEMA_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qattr {

struct AttributeKind {
  std::string name;
  bool is_product_type = false;
};

/// Closed set of attribute kinds. Immutable after construction; kinds are
/// referenced elsewhere by index into this schema.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<AttributeKind> kinds);

  /// The 17-kind default set (Brand, Color, ..., Product Type, Package).
  static const AttributeSchema& canonical();

  /// One attribute name per line, optional " (product_type)" suffix.
  static AttributeSchema from_stream(std::istream& in);
  static AttributeSchema from_file(const std::string& path);

  std::size_t size() const { return kinds_.size(); }
  const AttributeKind& kind(std::size_t i) const { return kinds_[i]; }
  const std::vector<AttributeKind>& kinds() const { return kinds_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Case-insensitive lookup, used when matching free-form LLM output.
  std::optional<std::size_t> find_ci(std::string_view name) const;

  std::optional<std::size_t> product_type_index() const { return product_type_; }

  bool operator==(const AttributeSchema& other) const;

  void write(std::ostream& out) const;

 private:
  std::vector<AttributeKind> kinds_;
  std::optional<std::size_t> product_type_;
};

struct TagLabel {
  enum class Prefix : std::uint8_t { O, B, I };

  Prefix prefix = Prefix::O;
  std::size_t kind = 0;  // schema index; meaningful only when prefix != O

  static TagLabel outside() { return {}; }
  static TagLabel begin(std::size_t kind) { return {Prefix::B, kind}; }
  static TagLabel inside(std::size_t kind) { return {Prefix::I, kind}; }

  bool is_o() const { return prefix == Prefix::O; }
  bool operator==(const TagLabel&) const = default;
};

/// Alphabet order: O first, then B/I per kind in schema declaration order.
/// O = 0, B(k) = 1 + 2k, I(k) = 2 + 2k.
std::vector<TagLabel> tag_alphabet(const AttributeSchema& schema);
std::size_t tag_count(const AttributeSchema& schema);
int tag_index(const TagLabel& tag);
TagLabel tag_from_index(const AttributeSchema& schema, int index);

/// Serialized form is whitespace-free: spaces in kind names become
/// underscores ("B-Price_Range"). Parsing accepts either.
std::string tag_name(const AttributeSchema& schema, const TagLabel& tag);
TagLabel parse_tag(const AttributeSchema& schema, std::string_view text);

struct EntitySpan {
  std::size_t kind = 0;
  std::size_t start = 0;  // token index, inclusive
  std::size_t end = 0;    // token index, inclusive
  std::string value;      // covered tokens joined by single spaces

  bool operator==(const EntitySpan&) const = default;
};

struct TaggedQuery {
  std::vector<std::string> tokens;
  std::vector<TagLabel> tags;
  // Auxiliary per-token annotations (CoNLL POS / chunk columns); empty when
  // absent, same length as tokens otherwise.
  std::vector<std::string> pos;
  std::vector<std::string> chunk;

  std::string text() const;  // tokens joined by single spaces
};

/// Maximal B...I runs become one span per run; O tokens excluded; output is
/// sorted by start (it falls out of the left-to-right scan).
std::vector<EntitySpan> spans_from_tags(const std::vector<std::string>& tokens,
                                        const std::vector<TagLabel>& tags);

/// Inverse of spans_from_tags; positions not covered by a span are O.
std::vector<TagLabel> tags_from_spans(const std::vector<std::string>& tokens,
                                      const std::vector<EntitySpan>& spans);

/// Whitespace tokenization, original casing preserved.
std::vector<std::string> tokenize(std::string_view text);

std::string lowercased(std::string_view s);
bool equals_ci(std::string_view a, std::string_view b);

}  // namespace qattr

#endif
