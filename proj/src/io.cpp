#include "mlne/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mlne {

std::size_t NameTable::intern(std::string_view name) {
  auto [it, inserted] = ids_.try_emplace(std::string(name), names_.size());
  if (inserted) names_.emplace_back(name);
  return it->second;
}

std::optional<std::size_t> NameTable::find(std::string_view name) const {
  const auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

bool starts_with_directive(std::string_view line, std::string_view directive, std::string_view& rest) {
  if (!line.starts_with(directive)) return false;
  rest = line.substr(directive.size());
  return true;
}

}  // namespace

LoadedNetwork parse_multilayer(std::istream& in, const std::string& source) {
  LoadedNetwork out;
  std::vector<EdgeTriple> triples;
  bool pinned_layers = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() != '#') line = trim(line.substr(0, line.find('#')));
    if (line.front() == '#') {
      std::string_view rest;
      if (starts_with_directive(line, "#layers:", rest)) {
        if (out.layers.size() > 0 && !pinned_layers)
          throw ParseError(source, line_no, "#layers: must precede the first edge");
        pinned_layers = true;
        for (auto tok : split_ws(rest)) out.layers.intern(tok);
      } else if (starts_with_directive(line, "#nodes:", rest)) {
        for (auto tok : split_ws(rest)) out.nodes.intern(tok);
      }
      continue;
    }
    const auto toks = split_ws(line);
    if (toks.size() < 3 || toks.size() > 4)
      throw ParseError(source, line_no, "expected 'src dst layer [weight]', got " + std::to_string(toks.size()) +
                                            " fields");
    if (toks.size() == 4) {
      double w;
      if (!parse_number(toks[3], w)) throw ParseError(source, line_no, "weight '" + std::string(toks[3]) + "' is not a number");
      ++out.stats.weights_ignored;
    }
    std::size_t l;
    if (pinned_layers) {
      const auto found = out.layers.find(toks[2]);
      if (!found) throw ParseError(source, line_no, "unknown layer '" + std::string(toks[2]) + "'");
      l = *found;
    } else {
      l = out.layers.intern(toks[2]);
    }
    const auto x = out.nodes.intern(toks[0]);
    const auto y = out.nodes.intern(toks[1]);
    triples.push_back({node(x), node(y), layer(l)});
  }
  if (in.bad()) throw IoError("read error in " + source);
  out.stats.lines = line_no;
  out.stats.edges_read = triples.size();
  BuildStats bs;
  out.network = MultilayerNetwork::from_triples(out.nodes.size(), out.layers.size(), triples, &bs);
  out.stats.duplicates = bs.duplicates;
  out.stats.self_loops = bs.self_loops;
  return out;
}

LoadedNetwork load_multilayer(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_multilayer(in, path.string());
}

void write_multilayer(std::ostream& out, const MultilayerNetwork& mn, const NameTable& nodes,
                      const NameTable& layers) {
  if (nodes.size() != mn.num_nodes() || layers.size() != mn.num_layers())
    throw MismatchError("name tables do not match the network");
  out << "#layers:";
  for (const auto& l : layers.names()) out << ' ' << l;
  out << "\n#nodes:";
  for (const auto& v : nodes.names()) out << ' ' << v;
  out << '\n';
  for (const auto& t : mn.triples())
    out << nodes.name(index(t.x)) << ' ' << nodes.name(index(t.y)) << ' ' << layers.name(index(t.layer)) << '\n';
}

const std::string* LabelMap::get(NodeId v) const {
  const auto it = labels_.find(v);
  return it == labels_.end() ? nullptr : &it->second;
}

std::map<std::string, std::size_t> LabelMap::counts() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [v, label] : labels_) ++out[label];
  return out;
}

LabelMap parse_labels(std::istream& in, const NameTable& names, const std::string& source) {
  LabelMap labels;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t cut = 0;
    while (cut < line.size() && !std::isspace(static_cast<unsigned char>(line[cut]))) ++cut;
    const auto name = line.substr(0, cut);
    const auto label = trim(line.substr(cut));
    if (label.empty()) throw ParseError(source, line_no, "missing label for '" + std::string(name) + "'");
    const auto id = names.find(name);
    if (!id) throw ReferenceError(source + ":" + std::to_string(line_no) + ": unknown node '" + std::string(name) + "'");
    labels.set(node(*id), std::string(label));
  }
  return labels;
}

LabelMap load_labels(const std::filesystem::path& path, const NameTable& names) {
  auto in = open_input(path);
  return parse_labels(in, names, path.string());
}

void write_embedding(std::ostream& out, const EmbeddingSpace& space, const NameTable& names) {
  if (names.size() != space.num_nodes()) throw MismatchError("name table does not match embedding rows");
  out << space.num_nodes() << ' ' << space.dim() << '\n';
  std::string line;
  for (std::size_t v = 0; v < space.num_nodes(); ++v) {
    line = names.name(v);
    for (double x : space.row(node(v))) {
      line += ' ';
      line += format_double(x);
    }
    line += '\n';
    out << line;
  }
}

void save_embedding(const std::filesystem::path& path, const EmbeddingSpace& space, const NameTable& names) {
  auto out = open_output(path);
  write_embedding(out, space, names);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

LoadedEmbedding read_embedding(std::istream& in, const NameTable* names, const std::string& source) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t n = 0, dim = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!trim(raw).empty()) break;
  }
  const auto header = split_ws(raw);
  if (header.size() != 2 || !parse_number(header[0], n) || !parse_number(header[1], dim))
    throw ParseError(source, line_no, "expected header '<num_nodes> <dim>'");
  if (names && names->size() != n)
    throw ParseError(source, line_no, "header declares " + std::to_string(n) + " nodes, name table has " +
                                          std::to_string(names->size()));

  LoadedEmbedding out;
  out.space = EmbeddingSpace(n, dim);
  std::vector<bool> seen(n, false);
  std::size_t rows = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = split_ws(raw);
    if (toks.empty()) continue;
    if (rows == n) throw ParseError(source, line_no, "more rows than the header's " + std::to_string(n));
    if (toks.size() != dim + 1)
      throw ParseError(source, line_no, "expected " + std::to_string(dim) + " values, got " +
                                            std::to_string(toks.size() - 1));
    std::size_t id;
    if (names) {
      const auto found = names->find(toks[0]);
      if (!found) throw ReferenceError(source + ":" + std::to_string(line_no) + ": unknown node '" + std::string(toks[0]) + "'");
      id = *found;
    } else {
      id = out.names.intern(toks[0]);
      if (id != rows) throw ParseError(source, line_no, "duplicate node '" + std::string(toks[0]) + "'");
    }
    if (seen[id]) throw ParseError(source, line_no, "duplicate node '" + std::string(toks[0]) + "'");
    seen[id] = true;
    auto row = out.space.row(node(id));
    for (std::size_t k = 0; k < dim; ++k)
      if (!parse_number(toks[k + 1], row[k]))
        throw ParseError(source, line_no, "bad value '" + std::string(toks[k + 1]) + "'");
    ++rows;
  }
  if (rows != n)
    throw ParseError(source, line_no, "header declares " + std::to_string(n) + " rows, found " + std::to_string(rows));
  if (names) out.names = *names;
  return out;
}

LoadedEmbedding load_embedding(const std::filesystem::path& path, const NameTable* names) {
  auto in = open_input(path);
  return read_embedding(in, names, path.string());
}

void write_walks(std::ostream& out, const WalkCorpus& corpus, const NameTable& names) {
  std::size_t omitted = 0;
  std::string line;
  for (const auto& walk : corpus.walks) {
    if (walk.size() < 2) {
      ++omitted;
      continue;
    }
    line.clear();
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i) line += ' ';
      line += names.name(index(walk[i]));
    }
    line += '\n';
    out << line;
  }
  if (omitted) out << "# omitted_singletons=" << omitted << '\n';
}

std::string_view metric_name(Metric m) { return m == Metric::euclidean ? "euclidean" : "cosine"; }

Metric parse_metric(std::string_view s) {
  if (s == "euclidean") return Metric::euclidean;
  if (s == "cosine" || s == "cosine-distance") return Metric::cosine;
  throw ConfigError("unknown metric '" + std::string(s) + "' (expected euclidean or cosine)");
}

std::string report_kv(const PredictionReport& r) {
  std::ostringstream s;
  s << "method=" << r.method << " dataset=" << r.dataset << " seed=" << r.seed << " frac=" << format_double(r.frac)
    << " metric=" << metric_name(r.metric) << " correct=" << r.correct << " predicted=" << r.predicted
    << " test_size=" << r.test_size << " candidates=" << r.candidates << " accuracy=" << format_double(r.accuracy)
    << " precision=" << format_double(r.precision) << " recall=" << format_double(r.recall)
    << " f1=" << format_double(r.f1) << " set_f1=" << format_double(r.set_f1) << " layer_f1_mean=" << format_double(r.layer_f1_mean)
    << " runtime_ms=" << format_double(r.runtime_ms);
  return s.str();
}

std::string report_json(const PredictionReport& r) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["dataset"] = r.dataset;
  j["seed"] = r.seed;
  j["frac"] = r.frac;
  j["metric"] = metric_name(r.metric);
  j["correct"] = r.correct;
  j["predicted"] = r.predicted;
  j["test_size"] = r.test_size;
  j["candidates"] = r.candidates;
  j["accuracy"] = r.accuracy;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["set_f1"] = r.set_f1;
  j["layer_f1"] = r.layer_f1;
  j["layer_f1_mean"] = r.layer_f1_mean;
  j["runtime_ms"] = r.runtime_ms;
  return j.dump();
}

PredictionReport report_from_json(std::string_view line) try {
  const auto j = nlohmann::json::parse(line);
  PredictionReport r;
  r.method = j.at("method").get<std::string>();
  r.dataset = j.at("dataset").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.frac = j.at("frac").get<double>();
  r.metric = parse_metric(j.at("metric").get<std::string>());
  r.correct = j.at("correct").get<std::size_t>();
  r.predicted = j.at("predicted").get<std::size_t>();
  r.test_size = j.at("test_size").get<std::size_t>();
  r.candidates = j.at("candidates").get<std::size_t>();
  r.accuracy = j.at("accuracy").get<double>();
  r.precision = j.at("precision").get<double>();
  r.recall = j.at("recall").get<double>();
  r.f1 = j.at("f1").get<double>();
  r.set_f1 = j.value("set_f1", 0.0);
  r.layer_f1 = j.at("layer_f1").get<std::vector<double>>();
  r.layer_f1_mean = j.at("layer_f1_mean").get<double>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  return r;
} catch (const nlohmann::json::exception& e) {
  throw ParseError("<report>", 1, e.what());
}

void append_reports(const std::filesystem::path& path, const std::vector<PredictionReport>& reports) {
  auto out = open_output(path, std::ios::app);
  for (const auto& r : reports) out << report_json(r) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace mlne
