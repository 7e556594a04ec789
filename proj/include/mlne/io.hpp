#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mlne/eval.hpp"
#include "mlne/graph.hpp"
#include "mlne/sgns.hpp"
#include "mlne/walker.hpp"

namespace mlne {

/// Insertion-ordered bijection between external names and dense ids.
class NameTable {
 public:
  /// Returns the existing id or appends a new one.
  std::size_t intern(std::string_view name);
  std::optional<std::size_t> find(std::string_view name) const;
  const std::string& name(std::size_t id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> ids_;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t edges_read = 0;
  std::size_t duplicates = 0;
  std::size_t self_loops = 0;
  std::size_t weights_ignored = 0;
};

struct LoadedNetwork {
  MultilayerNetwork network;
  NameTable nodes;
  NameTable layers;
  LoadStats stats;
};

/// Edge-list format, one "src dst layer [weight]" triple per line.
///
///   # comment
///   #layers: L1 L2 L3     pins layer order; other layer names become errors
///   #nodes: a b c         registers nodes up front (isolated nodes survive)
///
/// Without a #layers: directive, layers are numbered in order of first appearance.
/// A fourth weight column is accepted and ignored.
LoadedNetwork parse_multilayer(std::istream& in, const std::string& source = "<input>");
LoadedNetwork load_multilayer(const std::filesystem::path& path);

/// Writes directives plus canonical sorted triples; parse_multilayer reads it back exactly.
void write_multilayer(std::ostream& out, const MultilayerNetwork& mn, const NameTable& nodes,
                      const NameTable& layers);

/// node -> label, partial.
class LabelMap {
 public:
  void set(NodeId v, std::string label) { labels_[v] = std::move(label); }
  const std::string* get(NodeId v) const;
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  /// label -> number of nodes carrying it.
  std::map<std::string, std::size_t> counts() const;

 private:
  std::map<NodeId, std::string> labels_;
};

/// "node label..." per line; the label is the rest of the line. Throws
/// ReferenceError for names missing from `names`.
LabelMap parse_labels(std::istream& in, const NameTable& names, const std::string& source = "<input>");
LabelMap load_labels(const std::filesystem::path& path, const NameTable& names);

/// Header "<num_nodes> <dim>", then "<name> v1 ... vd" per node, in id order.
/// Values are written in shortest round-trip form.
void write_embedding(std::ostream& out, const EmbeddingSpace& space, const NameTable& names);
void save_embedding(const std::filesystem::path& path, const EmbeddingSpace& space, const NameTable& names);

struct LoadedEmbedding {
  EmbeddingSpace space;
  NameTable names;  ///< file order; ids match rows
};

/// When `names` is given, rows are placed at the ids it assigns and every
/// name must be known; otherwise ids follow file order.
LoadedEmbedding read_embedding(std::istream& in, const NameTable* names = nullptr,
                               const std::string& source = "<input>");
LoadedEmbedding load_embedding(const std::filesystem::path& path, const NameTable* names = nullptr);

/// One walk per line as space-separated names. Singleton walks are left out
/// and counted in a trailing "# omitted_singletons=K" line when K > 0.
void write_walks(std::ostream& out, const WalkCorpus& corpus, const NameTable& names);

std::string_view metric_name(Metric m);
Metric parse_metric(std::string_view s);

/// "key=value" line (no trailing newline).
std::string report_kv(const PredictionReport& r);
/// Compact single-line JSON object.
std::string report_json(const PredictionReport& r);
PredictionReport report_from_json(std::string_view line);
/// Appends one JSON line per report.
void append_reports(const std::filesystem::path& path, const std::vector<PredictionReport>& reports);

}  // namespace mlne
