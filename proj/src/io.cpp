#include "mdeo/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mdeo {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

void write_csv(const std::string& path, const CsvRow& header,
               const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& names) {
  CsvRow header{"network"};
  header.insert(header.end(), names.begin(), names.end());
  std::vector<CsvRow> rows;
  for (int i = 0; i < m.rows(); ++i) {
    CsvRow row{names.at(i)};
    for (int j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_curves_csv(const std::string& path, const MdeoResult& res) {
  std::vector<CsvRow> rows;
  for (const auto& net : res.networks)
    for (const auto& s : net.stats)
      rows.push_back({net.name, std::to_string(s.generation), format_double(s.best),
                      format_double(s.mean), std::to_string(s.transfer_in), s.sources});
  write_csv(path,
            {"network", "generation", "best_fitness", "mean_fitness", "transfer_in_count",
             "sources"},
            rows);
}

void write_transfers_csv(const std::string& path, const MdeoResult& res,
                         const std::vector<std::string>& names) {
  std::vector<CsvRow> rows;
  for (const auto& e : res.events)
    for (std::size_t a = 0; a < e.sources.size(); ++a)
      rows.push_back({std::to_string(e.generation), names.at(e.target),
                      names.at(e.sources[a]), std::to_string(e.counts[a]),
                      e.contributions.empty() ? "" : format_double(e.contributions[a])});
  write_csv(path, {"generation", "target", "source", "count", "contribution"}, rows);
}

void write_embedding_csv(const std::string& path, const Matrix& z,
                         const std::vector<std::string>& labels) {
  CsvRow header{"node"};
  for (int d = 0; d < z.cols(); ++d) header.push_back("e" + std::to_string(d));
  std::vector<CsvRow> rows;
  for (int v = 0; v < z.rows(); ++v) {
    CsvRow row{labels.at(v)};
    for (int d = 0; d < z.cols(); ++d) row.push_back(format_double(z(v, d)));
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_mapping_csv(const std::string& path, const std::vector<NodeId>& map,
                       const std::vector<std::string>& source_labels,
                       const std::vector<std::string>& target_labels) {
  std::vector<CsvRow> rows;
  for (std::size_t u = 0; u < map.size(); ++u)
    rows.push_back({source_labels.at(u), target_labels.at(map[u])});
  write_csv(path, {"source_id", "target_id"}, rows);
}

void write_partition_csv(const std::string& path, const Partition& p,
                         const std::vector<std::string>& labels) {
  std::vector<CsvRow> rows;
  for (std::size_t v = 0; v < p.assignment.size(); ++v)
    rows.push_back({labels.at(v), std::to_string(p.assignment[v])});
  write_csv(path, {"node_id", "community_id"}, rows);
}

void write_report_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<StructuralReport>& reports) {
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    rows.push_back({names.at(i), std::to_string(r.edits_count),
                    format_double(r.clustering_before), format_double(r.clustering_after),
                    format_double(r.asd_before), format_double(r.asd_after),
                    format_double(r.betweenness_overlap), format_double(r.pagerank_overlap),
                    format_double(r.modularity_before), format_double(r.modularity_after)});
  }
  write_csv(path,
            {"network", "edits", "clustering_before", "clustering_after", "asd_before",
             "asd_after", "betweenness_top20_overlap", "pagerank_top20_overlap",
             "modularity_before", "modularity_after"},
            rows);
}

std::string solution_script(const Chromosome& c, const std::vector<std::string>& labels) {
  std::ostringstream out;
  if (c.task == TaskType::kInfluenceMax) {
    for (NodeId s : c.seeds) out << "seed " << labels.at(s) << '\n';
    return out.str();
  }
  for (const auto& [u, v] : c.additions) out << "+ " << labels.at(u) << ' ' << labels.at(v) << '\n';
  for (const auto& [u, v] : c.deletions) out << "- " << labels.at(u) << ' ' << labels.at(v) << '\n';
  return out.str();
}

Solution parse_solution(const std::string& text,
                        const std::unordered_map<std::string, NodeId>& label_to_id) {
  Solution sol;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto id_of = [&](const std::string& label) {
    const auto it = label_to_id.find(label);
    if (it == label_to_id.end())
      throw std::runtime_error("line " + std::to_string(lineno) + ": unknown node '" + label +
                               "'");
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op[0] == '#') continue;
    std::string a, b, extra;
    if (op == "seed") {
      if (!(ls >> a) || (ls >> extra))
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected 'seed u'");
      sol.seeds.push_back(id_of(a));
    } else if (op == "+" || op == "-") {
      if (!(ls >> a >> b) || (ls >> extra))
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected '" + op +
                                 " u v'");
      const Edge e = make_edge(id_of(a), id_of(b));
      (op == "+" ? sol.edits.additions : sol.edits.deletions).push_back(e);
    } else {
      throw std::runtime_error("line " + std::to_string(lineno) + ": unknown operation '" + op +
                               "'");
    }
  }
  return sol;
}

Solution load_solution(const std::string& path,
                       const std::unordered_map<std::string, NodeId>& label_to_id) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read solution file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution(buf.str(), label_to_id);
}

OutputTracker::~OutputTracker() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& path : paths_) std::filesystem::remove(path, ec);
}

void OutputTracker::track(const std::string& path) { paths_.push_back(path); }

}  // namespace mdeo
