#include "gwm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace gwm {

namespace {

// z * A(z): shift coefficients up one index at unchanged truncation.
TruncatedSeries shift_up(const TruncatedSeries& a) {
  TruncatedSeries out(a.truncation());
  for (std::size_t i = a.truncation(); i >= 1; --i) out[i] = a[i - 1];
  out[0] = cplx{};
  return out;
}

}  // namespace

MomentEngine::MomentEngine(OffspringLaw law, std::size_t truncation)
    : n_(truncation),
      work_n_(truncation + kMaxTolls + 2),
      size_law_(std::move(law), truncation + kMaxTolls + 2),
      y_(size_law_.series()) {
  // z y'(z) has coefficients n q_n; y has leading order 1 with q_1 = p_0.
  TruncatedSeries zyp(work_n_);
  for (std::size_t n = 1; n <= work_n_; ++n) zyp[n] = double(n) * y_[n];
  zy_prime_over_y_ = divide(zyp, y_);
}

const TruncatedSeries& MomentEngine::phi_m_of_y(unsigned m) {
  if (m > kMaxTolls + 1)
    throw guard_error("phi_m_of_y: ladder capped at m <= " +
                      std::to_string(kMaxTolls + 1));
  if (phi_ladder_.empty()) {
    phi_ladder_.push_back(divide(y_, TruncatedSeries::z(work_n_)));
  }
  while (phi_ladder_.size() <= m) {
    const TruncatedSeries& prev = phi_ladder_.back();
    // y'(z) has constant term q_1 = p_0 > 0, so the division is regular.
    TruncatedSeries yp = differentiate(y_);
    phi_ladder_.push_back(divide(differentiate(prev), yp));
  }
  return phi_ladder_[m];
}

int MomentEngine::toll_id(const TollSequence& toll) {
  for (std::size_t i = 0; i < toll_pool_.size(); ++i)
    if (toll_pool_[i] == toll) return int(i);
  toll_pool_.push_back(toll);
  toll_series_.push_back(toll.series(work_n_));
  return int(toll_pool_.size()) - 1;
}

TruncatedSeries MomentEngine::moment_series(
    const std::vector<TollSequence>& tolls) {
  if (tolls.size() > kMaxTolls) {
    std::ostringstream os;
    os << "moment_series: " << tolls.size()
       << " tolls exceed the complexity guard (<= " << kMaxTolls
       << "; partition sum is exponential in the toll count)";
    throw guard_error(os.str());
  }
  std::vector<int> ids;
  ids.reserve(tolls.size());
  for (const TollSequence& t : tolls) ids.push_back(toll_id(t));
  std::sort(ids.begin(), ids.end());
  return memoized(ids).truncated(n_);
}

const TruncatedSeries& MomentEngine::memoized(const std::vector<int>& ids) {
  auto it = memo_.find(ids);
  if (it != memo_.end()) return it->second;
  TruncatedSeries value = compute_multiset(ids);
  return memo_.emplace(ids, std::move(value)).first->second;
}

TruncatedSeries MomentEngine::compute_multiset(const std::vector<int>& ids) {
  const std::size_t ell = ids.size();
  if (ell == 0) return y_;

  TruncatedSeries sum(work_n_);

  // Blocks are sets of positions 0..ell-1; duplicates in ids are handled by
  // position so that multinomial multiplicities come out automatically.
  std::vector<std::vector<int>> blocks;
  std::vector<int> rest;
  std::vector<int> i0;

  auto add_term = [&](const std::vector<std::vector<int>>& part) {
    const unsigned m = unsigned(part.size());
    // A block equal to the full multiset would recurse on itself.
    if (m == 1 && part[0].size() == ell) return;
    TruncatedSeries bracket = phi_m_of_y(m);
    for (const std::vector<int>& block : part) {
      std::vector<int> sub;
      sub.reserve(block.size());
      for (int pos : block) sub.push_back(ids[std::size_t(pos)]);
      std::sort(sub.begin(), sub.end());
      bracket = mul(bracket, memoized(sub));
    }
    bracket = shift_up(bracket);
    for (int pos : i0)
      bracket = hadamard(bracket, toll_series_[std::size_t(ids[std::size_t(pos)])]);
    sum = add(sum, bracket);
  };

  // Standard set-partition recursion: the next element joins an existing
  // block or opens a new one.  Deeper calls restore the block count before
  // returning, so indexing over the entry count is safe.
  std::function<void(std::size_t)> partitions = [&](std::size_t idx) {
    if (idx == rest.size()) {
      add_term(blocks);
      return;
    }
    const int elem = rest[idx];
    const std::size_t existing = blocks.size();
    for (std::size_t bi = 0; bi < existing; ++bi) {
      blocks[bi].push_back(elem);
      partitions(idx + 1);
      blocks[bi].pop_back();
    }
    blocks.push_back({elem});
    partitions(idx + 1);
    blocks.pop_back();
  };

  // Iterate I0 over all position subsets.
  for (unsigned mask = 0; mask < (1u << ell); ++mask) {
    i0.clear();
    rest.clear();
    for (std::size_t p = 0; p < ell; ++p) {
      if (mask & (1u << p))
        i0.push_back(int(p));
      else
        rest.push_back(int(p));
    }
    if (rest.empty()) {
      // m = 0 term: bracket is z Phi(y) = y.
      TruncatedSeries bracket = y_;
      for (int pos : i0)
        bracket =
            hadamard(bracket, toll_series_[std::size_t(ids[std::size_t(pos)])]);
      sum = add(sum, bracket);
    } else {
      blocks.clear();
      partitions(0);
    }
  }

  return mul(zy_prime_over_y_, sum);
}

cplx MomentEngine::conditional_moment(std::size_t n,
                                      const std::vector<TollSequence>& tolls) {
  if (n > n_) throw domain_error("conditional_moment: n exceeds truncation");
  const double qn = size_law_.q(n);
  if (!(qn > 0.0)) {
    std::ostringstream os;
    os << "conditional_moment: size n = " << n
       << " is unattainable (q_n = 0, span " << size_law_.law().span() << ")";
    throw domain_error(os.str());
  }
  if (tolls.empty()) return cplx{1.0};
  const TruncatedSeries m = moment_series(tolls);
  return m[n] / qn;
}

namespace {

struct WeightedTree {
  double weight;
  std::vector<std::uint8_t> sizes;  // fringe subtree sizes, root last
};

// All ordered rooted trees of a given size with their Galton-Watson weights
// prod_v p_deg(v); sizes are capped so the catalogue stays tiny.
std::vector<std::vector<WeightedTree>> enumerate_trees(const OffspringLaw& law,
                                                       std::size_t n_max) {
  std::vector<std::vector<WeightedTree>> all(n_max + 1);
  all[1].push_back(WeightedTree{law.pmf(0), {1}});
  for (std::size_t s = 2; s <= n_max; ++s) {
    // Root of degree d with child subtree sizes composing s-1.
    std::vector<std::size_t> comp;
    std::function<void(std::size_t, double, std::vector<std::uint8_t>&)> rec =
        [&](std::size_t remaining, double weight,
            std::vector<std::uint8_t>& sizes) {
          if (remaining == 0) {
            const double w = weight * law.pmf(comp.size());
            if (w != 0.0) {
              WeightedTree t{w, sizes};
              t.sizes.push_back(std::uint8_t(s));
              all[s].push_back(std::move(t));
            }
            return;
          }
          for (std::size_t c = 1; c <= remaining; ++c) {
            for (const WeightedTree& sub : all[c]) {
              comp.push_back(c);
              const std::size_t old = sizes.size();
              sizes.insert(sizes.end(), sub.sizes.begin(), sub.sizes.end());
              rec(remaining - c, weight * sub.weight, sizes);
              sizes.resize(old);
              comp.pop_back();
            }
          }
        };
    std::vector<std::uint8_t> sizes;
    rec(s - 1, 1.0, sizes);
  }
  return all;
}

}  // namespace

cplx enumerate_moment(const OffspringLaw& law, std::size_t n,
                      const std::vector<TollSequence>& tolls) {
  if (n < 1 || n > 9)
    throw guard_error("enumerate_moment: n capped at 9 (ordered-tree count)");
  const auto catalogue = enumerate_trees(law, n);

  double qn = 0.0;
  for (const WeightedTree& t : catalogue[n]) qn += t.weight;
  if (!(qn > 0.0))
    throw domain_error("enumerate_moment: size " + std::to_string(n) +
                       " has zero probability under this law");

  // Consistency of the enumeration weights with the series route.
  {
    TreeSizeLaw ts(law, std::max<std::size_t>(n, 2));
    if (std::fabs(ts.q(n) - qn) > 1e-12)
      throw error("enumerate_moment: enumeration q_n disagrees with the "
                  "triangular recursion beyond 1e-12");
  }

  std::vector<std::vector<cplx>> b(tolls.size());
  for (std::size_t i = 0; i < tolls.size(); ++i) {
    b[i].resize(n + 1);
    for (std::size_t s = 1; s <= n; ++s) b[i][s] = tolls[i].eval(s);
  }

  cplx acc{};
  for (const WeightedTree& t : catalogue[n]) {
    cplx prod{1.0};
    for (std::size_t i = 0; i < tolls.size(); ++i) {
      cplx f{};
      for (std::uint8_t s : t.sizes) f += b[i][s];
      prod *= f;
    }
    acc += t.weight * prod;
  }
  return acc / qn;
}

MomentTable build_moment_table(MomentTable::Route route,
                               const OffspringLaw& law,
                               const std::vector<TollSequence>& tolls,
                               const std::vector<std::size_t>& sizes,
                               std::size_t truncation) {
  MomentTable table;
  table.law_name = law.name();
  table.tolls = tolls;
  table.route = route;
  if (route == MomentTable::Route::kSeries) {
    MomentEngine engine(law, truncation);
    for (std::size_t n : sizes)
      table.values[n] = engine.conditional_moment(n, tolls);
  } else {
    for (std::size_t n : sizes)
      table.values[n] = enumerate_moment(law, n, tolls);
  }
  return table;
}

}  // namespace gwm
