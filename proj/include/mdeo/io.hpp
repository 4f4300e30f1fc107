#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mdeo/chromosome.hpp"
#include "mdeo/community.hpp"
#include "mdeo/graph.hpp"
#include "mdeo/metrics.hpp"
#include "mdeo/orchestrator.hpp"
#include "mdeo/types.hpp"

namespace mdeo {

// Shortest round-trippable decimal form (printf %.17g semantics via
// shortest-exact formatting).
std::string format_double(double x);

void write_text_file(const std::string& path, const std::string& content);

using CsvRow = std::vector<std::string>;

void write_csv(const std::string& path, const CsvRow& header, const std::vector<CsvRow>& rows);

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& names);

// network,generation,best_fitness,mean_fitness,transfer_in_count,sources
void write_curves_csv(const std::string& path, const MdeoResult& res);

// generation,target,source,count,contribution
void write_transfers_csv(const std::string& path, const MdeoResult& res,
                         const std::vector<std::string>& names);

void write_embedding_csv(const std::string& path, const Matrix& z,
                         const std::vector<std::string>& labels);

void write_mapping_csv(const std::string& path, const std::vector<NodeId>& map,
                       const std::vector<std::string>& source_labels,
                       const std::vector<std::string>& target_labels);

void write_partition_csv(const std::string& path, const Partition& p,
                         const std::vector<std::string>& labels);

void write_report_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<StructuralReport>& reports);

// Edit scripts: "+ u v" / "- u v" lines for deception, "seed u" lines for
// spread genomes, using the original node labels.
std::string solution_script(const Chromosome& c, const std::vector<std::string>& labels);

struct Solution {
  EditSet edits;
  std::vector<NodeId> seeds;
};

Solution parse_solution(const std::string& text,
                        const std::unordered_map<std::string, NodeId>& label_to_id);
Solution load_solution(const std::string& path,
                       const std::unordered_map<std::string, NodeId>& label_to_id);

// Removes every registered file unless commit() was called, so failed runs
// do not leave partial outputs behind.
class OutputTracker {
 public:
  ~OutputTracker();

  void track(const std::string& path);
  void commit() { committed_ = true; }

 private:
  std::vector<std::string> paths_;
  bool committed_ = false;
};

}  // namespace mdeo
