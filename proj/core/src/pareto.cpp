#include "tsopt/pareto.hpp"

#include <cmath>
#include <sstream>

#include "tsopt/errors.hpp"
#include "tsopt/text.hpp"

namespace tsopt {

namespace {
constexpr double kObjectiveTolerance = 1e-9;
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b,
               const std::vector<Sense>& senses) {
  if (a.size() != b.size() || a.size() != senses.size())
    throw ValidationError("objective vectors and senses must share one dimensionality");
  bool strictly_better = false;
  for (std::size_t d = 0; d < senses.size(); ++d) {
    const double better = senses[d] == Sense::Minimize ? b[d] - a[d] : a[d] - b[d];
    if (better < 0.0) return false;
    if (better > 0.0) strictly_better = true;
  }
  return strictly_better;
}

bool objectives_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t d = 0; d < a.size(); ++d)
    if (std::fabs(a[d] - b[d]) > kObjectiveTolerance) return false;
  return true;
}

ParetoArchive non_dominated_filter(const ParetoArchive& archive) {
  ParetoArchive out;
  out.senses = archive.senses;
  for (const SelectionSolution& candidate : archive.members) {
    bool keep = true;
    for (const SelectionSolution& other : archive.members) {
      if (&other == &candidate) continue;
      if (!objectives_equal(other.objectives, candidate.objectives) &&
          dominates(other.objectives, candidate.objectives, archive.senses)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    // Collapse duplicate objective vectors into one representative,
    // keeping every provenance.
    bool merged = false;
    for (SelectionSolution& kept : out.members) {
      if (objectives_equal(kept.objectives, candidate.objectives)) {
        kept.provenance.insert(kept.provenance.end(), candidate.provenance.begin(),
                               candidate.provenance.end());
        merged = true;
        break;
      }
    }
    if (!merged) out.members.push_back(candidate);
  }
  return out;
}

ParetoArchive reference_frontier(const std::vector<ParetoArchive>& frontiers) {
  ParetoArchive merged;
  bool first = true;
  for (const ParetoArchive& f : frontiers) {
    if (first) {
      merged.senses = f.senses;
      first = false;
    } else if (f.senses != merged.senses) {
      throw ValidationError("all frontiers must share objective senses");
    }
    merged.members.insert(merged.members.end(), f.members.begin(), f.members.end());
  }
  return non_dominated_filter(merged);
}

int count_nondominated(const ParetoArchive& run_frontier, const ParetoArchive& reference) {
  int count = 0;
  for (const SelectionSolution& member : run_frontier.members) {
    bool survives = true;
    for (const SelectionSolution& ref : reference.members) {
      if (objectives_equal(ref.objectives, member.objectives)) continue;
      if (dominates(ref.objectives, member.objectives, reference.senses)) {
        survives = false;
        break;
      }
    }
    if (survives) ++count;
  }
  return count;
}

void save_frontier_file(const ParetoArchive& archive, const std::string& path) {
  std::ostringstream out;
  for (const SelectionSolution& member : archive.members) {
    // One line per provenance so per-algorithm attribution survives the
    // duplicate collapse; an empty provenance still yields one line.
    std::vector<Provenance> provenance = member.provenance;
    if (provenance.empty()) provenance.push_back({"unknown", 0});
    for (const Provenance& p : provenance) {
      out << p.algorithm << " " << p.run;
      for (double v : member.objectives) out << " " << format_g(v);
      out << "\n";
    }
  }
  write_file(path, out.str());
}

ParetoArchive load_frontier_file(const std::string& path, const std::vector<Sense>& senses) {
  ParetoArchive archive;
  archive.senses = senses;
  const std::vector<std::string> lines = split(read_file(path), '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string line = trim(lines[ln]);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(ln + 1);
    const std::vector<std::string> tok = split_ws(line);
    if (tok.size() != 2 + senses.size())
      throw DataError(where + ": expected '<algorithm> <run>' plus " +
                      std::to_string(senses.size()) + " objective values");
    SelectionSolution s;
    s.provenance.push_back({tok[0], static_cast<int>(parse_long(tok[1], where))});
    for (std::size_t d = 0; d < senses.size(); ++d)
      s.objectives.push_back(parse_double(tok[2 + d], where));
    archive.members.push_back(std::move(s));
  }
  return archive;
}

}  // namespace tsopt
