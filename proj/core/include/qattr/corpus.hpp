#ifndef QATTR_CORPUS_HPP
#define QATTR_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qattr/schema.hpp"

namespace qattr {

// ---------------------------------------------------------------------------
// CoNLL 4-column format: "word pos chunk ne-tag", single-space separated,
// empty line after each sentence. Missing POS/chunk are written as -X-.

std::vector<TaggedQuery> read_conll(std::istream& in, const AttributeSchema& schema);
void write_conll(std::ostream& out, const std::vector<TaggedQuery>& queries,
                 const AttributeSchema& schema);
std::string write_conll(const std::vector<TaggedQuery>& queries,
                        const AttributeSchema& schema);

// ---------------------------------------------------------------------------
// Annotation records (JSON Lines)

struct AttrPair {
  std::string kind;  // attribute name as parsed; canonical casing after clean
  std::string value;

  bool operator==(const AttrPair&) const = default;
};

enum class DropReason { NotInQuery, Overlap, UnknownKind };
const char* drop_reason_name(DropReason reason);

struct CleanDecision {
  AttrPair pair;
  bool kept = false;
  std::optional<DropReason> reason;  // set when dropped

  bool operator==(const CleanDecision&) const = default;
};

enum class RecordSource { Human, Llm, Synthetic };
const char* record_source_name(RecordSource source);

struct AnnotationRecord {
  std::string query;
  std::vector<AttrPair> pairs;  // kept pairs; kinds in the active schema
  std::optional<std::string> raw_response;
  std::vector<CleanDecision> clean_report;
  std::optional<bool> review_verdict;
  RecordSource source = RecordSource::Human;

  bool operator==(const AnnotationRecord&) const = default;
};

std::vector<AnnotationRecord> read_annotations(std::istream& in);
void write_annotations(std::ostream& out, const std::vector<AnnotationRecord>& records);
std::string write_annotations(const std::vector<AnnotationRecord>& records);

/// Gold spans for a record: pairs aligned against the tokenized query.
/// Records written by this library always align; use where that holds.
std::vector<EntitySpan> record_spans(const AnnotationRecord& record,
                                     const AttributeSchema& schema);
TaggedQuery record_to_tagged(const AnnotationRecord& record,
                             const AttributeSchema& schema);

// ---------------------------------------------------------------------------
// Value-to-span alignment

struct AlignResult {
  std::vector<EntitySpan> spans;          // one per matched pair, in pair order
  std::vector<std::size_t> matched;       // indices into pairs, parallel to spans
  std::vector<std::pair<std::size_t, DropReason>> dropped;
};

/// Greedy left-to-right, case-insensitive match of each value's token
/// sequence against still-unconsumed query tokens. Values absent from the
/// query drop as NotInQuery; values whose every occurrence collides with an
/// already-consumed position drop as Overlap. Pairs with kinds outside the
/// schema are the caller's problem (see annotate::clean).
AlignResult align_values(const std::vector<std::string>& tokens,
                         const std::vector<AttrPair>& pairs,
                         const AttributeSchema& schema);

// ---------------------------------------------------------------------------
// Deterministic split

struct SplitSpec {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
  std::uint64_t seed = 0;
};

struct SplitResult {
  std::vector<AnnotationRecord> train, dev, test;
};

SplitResult split(const std::vector<AnnotationRecord>& records, const SplitSpec& spec);

// ---------------------------------------------------------------------------
// Synthetic corpus (see synth grammar format in the README)

struct GrammarSlot {
  std::string lexicon;
  std::size_t kind = 0;  // schema index
};

struct GrammarToken {
  bool is_slot = false;
  std::string literal;  // when !is_slot
  GrammarSlot slot;     // when is_slot
};

using GrammarReading = std::vector<GrammarToken>;

struct GrammarTemplate {
  // Unambiguous templates have one reading. Ambiguous templates carry two
  // readings over the same surface (same literals, same lexicons per slot);
  // the gold reading is chosen per record by a hash of the slot fills.
  std::vector<GrammarReading> readings;
  bool ambiguous() const { return readings.size() > 1; }
};

struct Grammar {
  std::vector<std::pair<std::string, std::vector<std::string>>> lexicons;
  std::vector<GrammarTemplate> templates;
  double ambiguous_fraction = 0.15;

  const std::vector<std::string>* lexicon(const std::string& name) const;
};

Grammar parse_grammar(std::istream& in, const AttributeSchema& schema);
Grammar parse_grammar_file(const std::string& path, const AttributeSchema& schema);

/// The grammar shipped with the library (used when no file is given).
const std::string& default_grammar_text();
const Grammar& default_grammar();

struct SynthCorpus {
  std::vector<AnnotationRecord> records;
  std::vector<bool> ambiguous;  // parallel to records
};

/// n records, deterministic per seed. Every record is self-consistent:
/// align_values over its pairs reproduces the generating spans.
SynthCorpus synth_corpus(const Grammar& grammar, const AttributeSchema& schema,
                         std::size_t n, std::uint64_t seed);

}  // namespace qattr

#endif
