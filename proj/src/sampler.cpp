#include "gwm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gwm {

void validate_degree_sequence(const DegreeSequence& seq) {
  const std::size_t n = seq.size();
  if (n == 0) throw validation_error("degree sequence: empty");
  long walk = 0;
  for (std::size_t i = 0; i < n; ++i) {
    walk += long(seq.degrees[i]) - 1;
    if (i + 1 < n && walk < 0)
      throw validation_error(
          "degree sequence: partial sums dip below zero before the end");
  }
  if (walk != -1)
    throw validation_error("degree sequence: degrees do not sum to n - 1");
}

std::vector<std::uint32_t> subtree_sizes(const DegreeSequence& seq) {
  validate_degree_sequence(seq);
  const std::size_t n = seq.size();
  std::vector<std::uint32_t> sizes(n, 0);
  std::vector<std::uint32_t> stack;
  stack.reserve(64);
  for (std::size_t i = n; i-- > 0;) {
    const std::uint32_t d = seq.degrees[i];
    std::uint32_t total = 1;
    for (std::uint32_t c = 0; c < d; ++c) {
      total += stack.back();
      stack.pop_back();
    }
    sizes[i] = total;
    stack.push_back(total);
  }
  return sizes;
}

namespace {

// Rotate so the walk minimum lands on the final step: start just after the
// first position attaining the minimal prefix sum.  Integrality of the steps
// makes this the unique valid rotation.
void cycle_rotate(std::vector<std::uint32_t>& deg) {
  const std::size_t n = deg.size();
  long walk = 0, best = 0;
  std::size_t cut = 0;  // rotation start = cut (index after the first min)
  for (std::size_t i = 0; i < n; ++i) {
    walk += long(deg[i]) - 1;
    if (walk < best) {
      best = walk;
      cut = i + 1;
    }
  }
  if (cut != 0 && cut != n)
    std::rotate(deg.begin(), deg.begin() + long(cut), deg.end());
}

}  // namespace

ConditionedSampler::ConditionedSampler(OffspringLaw law, std::size_t n)
    : law_(std::move(law)), n_(n) {
  if (n < 1) throw domain_error("ConditionedSampler: requires n >= 1");
  if ((n - 1) % law_.span() != 0) {
    std::ostringstream os;
    os << "ConditionedSampler: n = " << n << " unattainable for span "
       << law_.span();
    throw domain_error(os.str());
  }

  switch (law_.family()) {
    case OffspringLaw::Family::kPoisson:
      strategy_ = "multinomial";
      return;
    case OffspringLaw::Family::kGeometric:
      strategy_ = "stars-bars";
      return;
    default:
      break;
  }

  for (std::size_t k = 0; k <= law_.pmf_truncation(); ++k)
    if (law_.pmf(k) > 0.0) support_.push_back(k);
  cdf_.resize(law_.pmf_truncation() + 1);
  double cum = 0.0;
  for (std::size_t k = 0; k < cdf_.size(); ++k) {
    cum += std::max(0.0, law_.pmf(k));
    cdf_[k] = cum;
  }
  cdf_.back() = std::max(cdf_.back(), 1.0);

  const bool finite_support = support_.back() <= 4096;
  if (finite_support && n <= 10'000) {
    strategy_ = "dp-table";
    // Row r: P(sum of r draws = s), s = 0..n-1, float, renormalized.
    dp_rows_.resize(n + 1);
    dp_rows_[0].assign(n, 0.0f);
    dp_rows_[0][0] = 1.0f;
    std::vector<double> cur(n, 0.0), nxt(n, 0.0);
    cur[0] = 1.0;
    for (std::size_t r = 1; r <= n; ++r) {
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (std::size_t s = 0; s < std::size_t(n); ++s) {
        const double w = cur[s];
        if (w == 0.0) continue;
        for (std::size_t k : support_) {
          if (s + k < std::size_t(n)) nxt[s + k] += w * law_.pmf(k);
        }
      }
      const double total = std::accumulate(nxt.begin(), nxt.end(), 0.0);
      if (total > 0.0)
        for (double& v : nxt) v /= total;
      dp_rows_[r].assign(nxt.begin(), nxt.end());
      cur.swap(nxt);
    }
    if (dp_rows_[n][n - 1] <= 0.0f)
      throw domain_error("ConditionedSampler: P(sum = n-1) = 0 at this n");
  } else {
    strategy_ = "rejection";
  }
}

void ConditionedSampler::sample_conditioned_degrees(
    Philox& rng, std::vector<std::uint32_t>& deg) const {
  const std::size_t n = n_;
  deg.assign(n, 0);

  if (strategy_ == "multinomial") {
    // Po(1) conditioned on the sum: n-1 balls thrown uniformly into n cells.
    for (std::size_t b = 0; b + 1 < n; ++b)
      deg[std::size_t(rng.next_below(n))]++;
    return;
  }

  if (strategy_ == "stars-bars") {
    // Ge(1/2) conditioned on the sum is uniform over weak compositions of
    // n-1 into n parts: place n-1 bars among 2n-2 slots.
    std::size_t bars_left = n - 1;
    std::size_t slots_left = 2 * n - 2;
    std::size_t group = 0;
    std::uint32_t stars = 0;
    while (slots_left > 0) {
      const bool bar = rng.next_double() * double(slots_left) < double(bars_left);
      if (bar) {
        deg[group++] = stars;
        stars = 0;
        --bars_left;
      } else {
        ++stars;
      }
      --slots_left;
    }
    deg[group] = stars;
    return;
  }

  if (strategy_ == "dp-table") {
    std::size_t s = n - 1;  // remaining sum
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::vector<float>& row = dp_rows_[n - i - 1];
      // P(xi = k | remaining) proportional to p_k row[s - k].
      double total = 0.0;
      for (std::size_t k : support_) {
        if (k > s) break;
        total += law_.pmf(k) * double(row[s - k]);
      }
      const double u = rng.next_double() * total;
      double acc = 0.0;
      std::size_t chosen = support_.back();
      for (std::size_t k : support_) {
        if (k > s) break;
        acc += law_.pmf(k) * double(row[s - k]);
        if (u < acc) {
          chosen = k;
          break;
        }
      }
      deg[i] = std::uint32_t(chosen);
      s -= chosen;
    }
    deg[n - 1] = std::uint32_t(s);
    return;
  }

  // Rejection: i.i.d. draws until the sum hits n - 1.
  for (long trial = 0; trial < 1'000'000; ++trial) {
    std::size_t sum = 0;
    bool overshoot = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.next_double();
      const std::size_t k =
          std::size_t(std::lower_bound(cdf_.begin(), cdf_.end(), u) -
                      cdf_.begin());
      deg[i] = std::uint32_t(k);
      sum += k;
      if (sum > n - 1) {
        overshoot = true;
        break;
      }
    }
    if (!overshoot && sum == n - 1) return;
  }
  std::ostringstream os;
  os << "ConditionedSampler: rejection budget (1e6 trials) exceeded for law "
     << law_.name() << " at n = " << n_
     << "; acceptance odds scale like span/(sigma sqrt(2 pi n))";
  throw error(os.str());
}

DegreeSequence ConditionedSampler::sample(Philox& rng) const {
  DegreeSequence seq;
  sample_conditioned_degrees(rng, seq.degrees);
  cycle_rotate(seq.degrees);
  return seq;
}

}  // namespace gwm
