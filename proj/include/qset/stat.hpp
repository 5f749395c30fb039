#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qset/bigint.hpp"
#include "qset/error.hpp"
#include "qset/ops.hpp"
#include "qset/value.hpp"

namespace qset::stat {

// ---------------------------------------------------------------------------
// Occupancy vectors: n box counts summing to N.
// ---------------------------------------------------------------------------

struct OccupancyVector {
  std::vector<std::size_t> counts;

  std::size_t boxes() const { return counts.size(); }
  std::size_t total() const {
    std::size_t t = 0;
    for (std::size_t c : counts) t += c;
    return t;
  }
  auto operator<=>(const OccupancyVector&) const = default;
};

// All C(N+n-1, n-1) weak compositions of N into n parts, lexicographic.
inline std::vector<OccupancyVector> enumerate_occupancies(std::size_t n, std::size_t N) {
  if (n == 0) throw Error(Errc::invalid_shape, "need at least one box");
  std::vector<OccupancyVector> out;
  OccupancyVector cur;
  cur.counts.assign(n, 0);
  auto rec = [&](auto&& self, std::size_t box, std::size_t left) -> void {
    if (box == n - 1) {
      cur.counts[box] = left;
      out.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      cur.counts[box] = k;
      self(self, box + 1, left - k);
    }
  };
  rec(rec, 0, N);
  return out;
}

// N! / prod(n_i!): how many placements of N distinct objects realize v.
inline BigInt multinomial_weight(const OccupancyVector& v) {
  return multinomial(std::span<const std::size_t>(v.counts));
}

// ---------------------------------------------------------------------------
// Distribution reports.
// ---------------------------------------------------------------------------

enum class Model { MB, BE, FD };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::MB: return "MB";
    case Model::BE: return "BE";
    case Model::FD: return "FD";
  }
  return "?";
}

struct DistributionReport {
  Model model = Model::MB;
  std::size_t n = 0;
  std::size_t N = 0;
  BigInt total;
  std::vector<std::pair<OccupancyVector, BigInt>> per_occupancy;
  std::vector<OccupancyVector> most_probable;
};

namespace detail {

inline void fill_most_probable(DistributionReport& r) {
  BigInt best = 0;
  for (const auto& [v, w] : r.per_occupancy)
    if (w > best) best = w;
  for (const auto& [v, w] : r.per_occupancy)
    if (w == best && best > 0) r.most_probable.push_back(v);
}

}  // namespace detail

// Every occupancy weighted by its parcel of the Leibniz polynomial;
// the weights add up to n^N exactly, and that identity is checked, not
// assumed.
inline DistributionReport mb_report(std::size_t n, std::size_t N) {
  DistributionReport r;
  r.model = Model::MB;
  r.n = n;
  r.N = N;
  r.total = 0;
  for (auto& v : enumerate_occupancies(n, N)) {
    BigInt w = multinomial_weight(v);
    r.total += w;
    r.per_occupancy.emplace_back(std::move(v), std::move(w));
  }
  if (r.total != ipow(n, N))
    throw std::logic_error("multinomial weights failed to sum to n^N");
  detail::fill_most_probable(r);
  return r;
}

// Only distinguishable possibilities: one count per occupancy vector.
inline DistributionReport be_report(std::size_t n, std::size_t N) {
  DistributionReport r;
  r.model = Model::BE;
  r.n = n;
  r.N = N;
  r.total = 0;
  for (auto& v : enumerate_occupancies(n, N)) {
    r.total += 1;
    r.per_occupancy.emplace_back(std::move(v), BigInt(1));
  }
  detail::fill_most_probable(r);
  return r;
}

// Exclusion principle on top: at most one particle per box.
inline DistributionReport fd_report(std::size_t n, std::size_t N) {
  DistributionReport r;
  r.model = Model::FD;
  r.n = n;
  r.N = N;
  r.total = 0;
  for (auto& v : enumerate_occupancies(n, N)) {
    bool ok = true;
    for (std::size_t c : v.counts)
      if (c > 1) ok = false;
    if (!ok) continue;
    r.total += 1;
    r.per_occupancy.emplace_back(std::move(v), BigInt(1));
  }
  detail::fill_most_probable(r);
  return r;
}

// Exact argmax of the multinomial weight, every maximizer, lexicographic.
inline std::vector<OccupancyVector> most_probable(std::size_t n, std::size_t N) {
  return mb_report(n, N).most_probable;
}

// ---------------------------------------------------------------------------
// Box distributions of a concrete qset.
// ---------------------------------------------------------------------------

struct PartitionTuple {
  std::vector<QSetValue> boxes;  // ordered, pairwise disjoint, union is x
  BigInt multiplicity;           // distinct witness assignments realizing it
};

// Ordered n-tuples of sub-qsets that exhaust x without repetition, one
// tuple per choice of per-class box compositions. For a classical x every
// multiplicity is 1 and the tuples are pairwise extensionally distinct.
inline std::vector<PartitionTuple> partition_tuples(const QSetValue& x, std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_shape, "need at least one box");
  auto classes = equivalence_classes(x);
  std::vector<std::vector<OccupancyVector>> comps;
  comps.reserve(classes.size());
  for (const auto& c : classes) comps.push_back(enumerate_occupancies(n, c.indices.size()));

  std::vector<PartitionTuple> out;
  std::vector<std::size_t> pick(classes.size(), 0);
  for (;;) {
    PartitionTuple t;
    t.multiplicity = 1;
    std::vector<std::vector<Occurrence>> boxes(n);
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      const OccupancyVector& comp = comps[ci][pick[ci]];
      t.multiplicity *= multinomial_weight(comp);
      std::size_t offset = 0;
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < comp.counts[b]; ++i)
          boxes[b].push_back(x.occurrences()[classes[ci].indices[offset + i]]);
        offset += comp.counts[b];
      }
    }
    t.boxes.reserve(n);
    for (auto& b : boxes) t.boxes.push_back(QSetValue::canonicalize(std::move(b)));
    out.push_back(std::move(t));

    std::size_t ci = classes.size();
    bool rolled = true;
    while (ci > 0) {
      --ci;
      if (pick[ci] + 1 < comps[ci].size()) {
        ++pick[ci];
        rolled = false;
        break;
      }
      pick[ci] = 0;
    }
    if (rolled) break;
  }
  return out;
}

// The same enumeration aggregated by per-box quasi-cardinals, computed by
// convolving class compositions so large classical sets stay tractable.
// The weighted total is n^qc(x).
inline DistributionReport distributions_of_qset(const QSetValue& x, std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_shape, "need at least one box");
  DistributionReport r;
  r.model = Model::MB;
  r.n = n;
  r.N = x.quasi_cardinal();
  std::map<std::vector<std::size_t>, BigInt> dp;
  dp[std::vector<std::size_t>(n, 0)] = 1;
  for (const auto& c : equivalence_classes(x)) {
    std::map<std::vector<std::size_t>, BigInt> next;
    auto comps = enumerate_occupancies(n, c.indices.size());
    for (const auto& [occ, w] : dp) {
      for (const auto& comp : comps) {
        std::vector<std::size_t> merged = occ;
        for (std::size_t b = 0; b < n; ++b) merged[b] += comp.counts[b];
        next[std::move(merged)] += w * multinomial_weight(comp);
      }
    }
    dp = std::move(next);
  }
  r.total = 0;
  for (auto& [counts, w] : dp) {
    r.total += w;
    r.per_occupancy.emplace_back(OccupancyVector{counts}, w);
  }
  if (r.total != ipow(n, r.N))
    throw std::logic_error("class convolution failed to sum to n^N");
  detail::fill_most_probable(r);
  return r;
}

// ---------------------------------------------------------------------------
// Rendering.
// ---------------------------------------------------------------------------

inline std::string occupancy_string(const OccupancyVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.counts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.counts[i]);
  }
  s += ")";
  return s;
}

// Bullet table in the style of per-box diagrams: one row per occupancy,
// fullest first box at the top.
inline std::string render_text(const DistributionReport& r) {
  std::ostringstream out;
  out << "model " << model_name(r.model) << "  n=" << r.n << "  N=" << r.N << "\n";
  for (auto it = r.per_occupancy.rbegin(); it != r.per_occupancy.rend(); ++it) {
    const auto& [v, w] = *it;
    out << "|";
    for (std::size_t b = 0; b < v.counts.size(); ++b) {
      out << " ";
      for (std::size_t i = 0; i < r.N; ++i) out << (i < v.counts[b] ? "*" : " ");
      out << " |";
    }
    out << "  w=" << w.str();
    if (r.total > 0) out << "  p=" << fixed6(w, r.total);
    out << "\n";
  }
  out << "total = " << r.total.str() << "\n";
  out << "most probable:";
  if (r.most_probable.empty()) {
    out << " (none)";
  } else {
    for (const auto& v : r.most_probable) out << " " << occupancy_string(v);
  }
  out << "\n";
  return out.str();
}

inline nlohmann::json to_json(const DistributionReport& r) {
  nlohmann::json occ = nlohmann::json::array();
  for (const auto& [v, w] : r.per_occupancy) {
    nlohmann::json entry = {{"counts", v.counts}, {"weight", w.str()}};
    if (r.total > 0) entry["probability"] = rational_string(w, r.total);
    occ.push_back(std::move(entry));
  }
  nlohmann::json mp = nlohmann::json::array();
  for (const auto& v : r.most_probable) mp.push_back(v.counts);
  return nlohmann::json{{"model", model_name(r.model)}, {"n", r.n},
                        {"N", r.N},                     {"total", r.total.str()},
                        {"occupancies", std::move(occ)}, {"most_probable", std::move(mp)}};
}

}  // namespace qset::stat
