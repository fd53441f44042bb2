#include "gwm/montecarlo.hpp"

#include <cmath>
#include <functional>

#include "gwm/parallel.hpp"

namespace gwm {

namespace {

// Kahan-compensated complex accumulator.
struct Kahan {
  cplx sum{}, comp{};
  void add(cplx v) {
    const cplx y = v - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Raw mixed powers tracked per toll: (l, r) with 1 <= l + r <= 4, r <= l.
constexpr std::pair<unsigned, unsigned> kPowers[] = {
    {1, 0}, {2, 0}, {1, 1}, {3, 0}, {2, 1}, {4, 0}, {3, 1}, {2, 2}};
constexpr std::size_t kPowerCount = sizeof(kPowers) / sizeof(kPowers[0]);

std::size_t accumulator_count(std::size_t tolls, std::size_t pairs) {
  return tolls * kPowerCount + 2 * pairs;
}

// Jackknife standard error of f over leave-one-batch-out aggregates.
double jackknife_se(
    const std::vector<std::vector<cplx>>& batch_sums,
    const std::vector<std::size_t>& batch_reps,
    const std::vector<cplx>& totals, std::size_t total_reps,
    const std::function<double(const std::vector<cplx>&, double)>& f) {
  const std::size_t b_count = batch_sums.size();
  std::vector<double> theta(b_count);
  double mean = 0.0;
  std::vector<cplx> rest(totals.size());
  for (std::size_t b = 0; b < b_count; ++b) {
    for (std::size_t j = 0; j < totals.size(); ++j)
      rest[j] = totals[j] - batch_sums[b][j];
    theta[b] = f(rest, double(total_reps - batch_reps[b]));
    mean += theta[b];
  }
  mean /= double(b_count);
  double ss = 0.0;
  for (double th : theta) ss += (th - mean) * (th - mean);
  return std::sqrt(ss * double(b_count - 1) / double(b_count));
}

}  // namespace

cplx functional_eval(const std::vector<std::uint32_t>& sizes,
                     const std::vector<cplx>& table) {
  cplx acc{};
  for (std::uint32_t s : sizes) {
    if (s >= table.size())
      throw domain_error("functional_eval: toll table shorter than a size");
    acc += table[s];
  }
  return acc;
}

std::vector<cplx> toll_table(const TollSequence& toll, std::size_t n) {
  std::vector<cplx> table(n + 1);
  for (std::size_t s = 1; s <= n; ++s) table[s] = toll.eval(s);
  return table;
}

EmpiricalSummary monte_carlo(const OffspringLaw& law, std::size_t n,
                             std::size_t reps,
                             const std::vector<TollSequence>& tolls,
                             std::uint64_t seed, unsigned threads) {
  if (reps < 1000) throw domain_error("monte_carlo: requires reps >= 1000");
  const std::size_t t_count = tolls.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < t_count; ++a)
    for (std::size_t b = a + 1; b < t_count; ++b) pairs.emplace_back(a, b);

  const ConditionedSampler sampler(law, n);

  // Toll lookup tables over sizes 1..n (one exp/log per size).
  std::vector<std::vector<cplx>> b_table(t_count);
  for (std::size_t i = 0; i < t_count; ++i)
    b_table[i] = toll_table(tolls[i], n);

  // Fixed batch layout: deterministic for any thread count, and the batches
  // double as jackknife blocks.
  const std::size_t b_count = 50;
  std::vector<std::size_t> batch_reps(b_count, reps / b_count);
  for (std::size_t b = 0; b < reps % b_count; ++b) batch_reps[b]++;
  std::vector<std::size_t> batch_start(b_count, 0);
  for (std::size_t b = 1; b < b_count; ++b)
    batch_start[b] = batch_start[b - 1] + batch_reps[b - 1];

  const std::size_t acc_count = accumulator_count(t_count, pairs.size());
  std::vector<std::vector<cplx>> batch_sums(b_count,
                                            std::vector<cplx>(acc_count));

  parallel_for(b_count, threads, [&](std::size_t b) {
    std::vector<Kahan> acc(acc_count);
    std::vector<cplx> f_val(t_count);
    for (std::size_t r = 0; r < batch_reps[b]; ++r) {
      Philox rng(seed, batch_start[b] + r);
      const DegreeSequence seq = sampler.sample(rng);
      const std::vector<std::uint32_t> sizes = subtree_sizes(seq);
      for (std::size_t i = 0; i < t_count; ++i)
        f_val[i] = functional_eval(sizes, b_table[i]);
      for (std::size_t i = 0; i < t_count; ++i) {
        const cplx f = f_val[i];
        const cplx fc = std::conj(f);
        std::size_t base = i * kPowerCount;
        for (std::size_t p = 0; p < kPowerCount; ++p) {
          cplx v{1.0};
          for (unsigned j = 0; j < kPowers[p].first; ++j) v *= f;
          for (unsigned j = 0; j < kPowers[p].second; ++j) v *= fc;
          acc[base + p].add(v);
        }
      }
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const cplx fa = f_val[pairs[pi].first];
        const cplx fb = f_val[pairs[pi].second];
        acc[t_count * kPowerCount + 2 * pi].add(fa * fb);
        acc[t_count * kPowerCount + 2 * pi + 1].add(fa * std::conj(fb));
      }
    }
    for (std::size_t j = 0; j < acc_count; ++j) batch_sums[b][j] = acc[j].sum;
  });

  std::vector<cplx> totals(acc_count);
  for (std::size_t b = 0; b < b_count; ++b)
    for (std::size_t j = 0; j < acc_count; ++j) totals[j] += batch_sums[b][j];

  // Raw mixed moment E[F^l conj F^r] from an aggregate vector.
  auto raw = [&](const std::vector<cplx>& sums, double count, std::size_t toll,
                 unsigned l, unsigned r) -> cplx {
    const bool flip = r > l;
    if (flip) std::swap(l, r);
    for (std::size_t p = 0; p < kPowerCount; ++p) {
      if (kPowers[p].first == l && kPowers[p].second == r) {
        const cplx v = sums[toll * kPowerCount + p] / count;
        return flip ? std::conj(v) : v;
      }
    }
    throw error("monte_carlo: untracked mixed power");
  };
  // Central mixed moment E[(F-m)^l (conj(F-m))^r].
  auto central = [&](const std::vector<cplx>& sums, double count,
                     std::size_t toll, unsigned l, unsigned r) -> cplx {
    const cplx m = raw(sums, count, toll, 1, 0);
    const cplx mc = std::conj(m);
    cplx acc{};
    for (unsigned i = 0; i <= l; ++i) {
      for (unsigned j = 0; j <= r; ++j) {
        double bin = 1.0;
        for (unsigned u = 0; u < i; ++u) bin *= double(l - u) / double(u + 1);
        for (unsigned u = 0; u < j; ++u) bin *= double(r - u) / double(u + 1);
        cplx w{1.0};
        for (unsigned u = 0; u < l - i; ++u) w *= -m;
        for (unsigned u = 0; u < r - j; ++u) w *= -mc;
        const cplx rawij =
            (i + j == 0) ? cplx{1.0} : raw(sums, count, toll, i, j);
        acc += bin * w * rawij;
      }
    }
    return acc;
  };

  EmpiricalSummary out;
  out.n = n;
  out.reps = reps;
  out.seed = seed;
  out.batches = b_count;
  out.strategy = sampler.strategy();

  for (std::size_t i = 0; i < t_count; ++i) {
    TollStats st;
    st.toll = tolls[i].describe();
    st.mean = raw(totals, double(reps), i, 1, 0);
    st.variance = central(totals, double(reps), i, 1, 1).real();
    st.m4 = central(totals, double(reps), i, 2, 2).real();
    st.abs2_mean = raw(totals, double(reps), i, 1, 1).real();
    const double m2 = central(totals, double(reps), i, 2, 0).real();
    const double m3 = central(totals, double(reps), i, 3, 0).real();
    const double m4r = central(totals, double(reps), i, 4, 0).real();
    if (m2 > 0.0) {
      st.skewness = m3 / std::pow(m2, 1.5);
      st.excess_kurtosis = m4r / (m2 * m2) - 3.0;
    }
    for (auto [l, r] : kPowers)
      st.mixed[{l, r}] = raw(totals, double(reps), i, l, r);

    st.se_mean_re = jackknife_se(
        batch_sums, batch_reps, totals, reps,
        [&](const std::vector<cplx>& s, double c) {
          return raw(s, c, i, 1, 0).real();
        });
    st.se_mean_im = jackknife_se(
        batch_sums, batch_reps, totals, reps,
        [&](const std::vector<cplx>& s, double c) {
          return raw(s, c, i, 1, 0).imag();
        });
    st.se_variance = jackknife_se(
        batch_sums, batch_reps, totals, reps,
        [&](const std::vector<cplx>& s, double c) {
          return central(s, c, i, 1, 1).real();
        });
    st.se_abs2_mean = jackknife_se(
        batch_sums, batch_reps, totals, reps,
        [&](const std::vector<cplx>& s, double c) {
          return raw(s, c, i, 1, 1).real();
        });
    out.per_toll.push_back(std::move(st));
  }

  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    CrossStats cs;
    cs.a = pairs[pi].first;
    cs.b = pairs[pi].second;
    const cplx ma = raw(totals, double(reps), cs.a, 1, 0);
    const cplx mb = raw(totals, double(reps), cs.b, 1, 0);
    const cplx sab = totals[t_count * kPowerCount + 2 * pi] / double(reps);
    const cplx sabc = totals[t_count * kPowerCount + 2 * pi + 1] / double(reps);
    cs.cov_plain = sab - ma * mb;
    cs.cov_conj = sabc - ma * std::conj(mb);
    const double va = out.per_toll[cs.a].variance;
    const double vb = out.per_toll[cs.b].variance;
    if (va > 0.0 && vb > 0.0) {
      cs.corr_with_conj = std::abs(cs.cov_plain) / std::sqrt(va * vb);
      cs.corr_conj = std::abs(cs.cov_conj) / std::sqrt(va * vb);
    }
    out.cross.push_back(cs);
  }
  return out;
}

}  // namespace gwm
