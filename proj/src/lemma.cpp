#include "snzlab/lemma.hpp"

#include <algorithm>

namespace snzlab {

namespace {

std::int64_t to_i64(std::size_t v) { return static_cast<std::int64_t>(v); }

std::string param(std::size_t v) { return std::to_string(v); }

// Tracks the smallest slack across a family of inequality checks.
class MarginTracker {
 public:
  void observe(const BigRat& slack, const std::string& where) {
    if (!seen_ || slack < best_) {
      seen_ = true;
      best_ = slack;
      where_ = where;
    }
  }
  bool seen() const { return seen_; }
  const BigRat& best() const { return best_; }
  const std::string& where() const { return where_; }

 private:
  bool seen_ = false;
  BigRat best_;
  std::string where_;
};

}  // namespace

std::vector<BigInt> DualBasisData::column(std::size_t k) const {
  std::vector<BigInt> v(t + 1);
  for (std::size_t j = 0; j <= t; ++j) v[j] = m[j][k];
  return v;
}

std::vector<BigInt> DualBasisData::dual_vector(std::size_t i) const {
  std::vector<BigInt> u(t + 1);
  for (std::size_t j = 0; j <= t; ++j) {
    u[j] = binom(to_i64(t - i), to_i64(t) - to_i64(j));
  }
  return u;
}

DualBasisData build_dual_basis(std::size_t t) {
  DualBasisData data;
  data.t = t;
  data.m.assign(t + 1, std::vector<BigInt>(t + 1));
  for (std::size_t j = 0; j <= t; ++j) {
    for (std::size_t k = 0; k <= t; ++k) {
      BigInt value = binom(to_i64(t - j), to_i64(t) - to_i64(k));
      if ((k >= j) && ((k - j) & 1)) value = -value;
      data.m[j][k] = value;  // zero for k < j: C(t-j, t-k) with t-k > t-j
    }
  }
  return data;
}

bool check_dual_basis(std::size_t t) {
  const DualBasisData data = build_dual_basis(t);
  for (std::size_t i = 0; i <= t; ++i) {
    const std::vector<BigInt> u = data.dual_vector(i);
    for (std::size_t k = 0; k <= t; ++k) {
      BigInt dot = 0;
      for (std::size_t j = 0; j <= t; ++j) dot += u[j] * data.m[j][k];
      if (dot != (i == k ? 1 : 0)) return false;
    }
  }
  return true;
}

BCoefficients recover_b(const WeightVector& w) {
  if (w.w.empty() || !w.any_nonzero()) {
    throw InvalidInput("b-recovery needs a weight vector that is not all zero");
  }
  const std::size_t t = w.level();
  const DualBasisData data = build_dual_basis(t);
  std::vector<BigInt> b(t + 1, 0);
  std::size_t s = 0;
  for (std::size_t k = 0; k <= t; ++k) {
    for (std::size_t j = 0; j <= t; ++j) b[k] += w.w[j] * data.m[j][k];
    if (b[k] != 0) s = k;
  }
  b.resize(s + 1);
  return BCoefficients{s, std::move(b)};
}

std::vector<BigInt> combine_dual_vectors(const BCoefficients& bc, std::size_t t) {
  if (bc.b.size() != bc.s + 1 || bc.s > t) {
    throw InvalidInput("coefficient vector inconsistent with its degree");
  }
  std::vector<BigInt> w(t + 1, 0);
  for (std::size_t i = 0; i <= bc.s; ++i) {
    for (std::size_t j = 0; j <= t; ++j) {
      w[j] += bc.b[i] * binom(to_i64(t - i), to_i64(t) - to_i64(j));
    }
  }
  return w;
}

BigRat ptilde_entry(std::size_t t, std::size_t i, std::size_t j) {
  if (t < 1 || i > t || j > t) {
    throw InvalidInput("ptilde_entry needs 1 <= t and i, j <= t");
  }
  // prod_{r<i} (j - r) / (t - r); a zero factor (j < i) makes the entry 0.
  BigRat value = 1;
  for (std::size_t r = 0; r < i; ++r) {
    if (j <= r) return BigRat(0);
    value *= BigRat(BigInt(j - r), BigInt(t - r));
  }
  return value;
}

RatioMatrix build_ptilde(std::size_t t, std::size_t max_row) {
  if (max_row > t) throw InvalidInput("ptilde rows cannot exceed t");
  RatioMatrix mat;
  mat.t = t;
  mat.rows.reserve(max_row + 1);
  for (std::size_t i = 0; i <= max_row; ++i) {
    std::vector<BigRat> row(t + 1);
    for (std::size_t j = 0; j <= t; ++j) row[j] = ptilde_entry(t, i, j);
    mat.rows.push_back(std::move(row));
  }
  return mat;
}

bool CheckReport::all_ok() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const CheckEntry& e) { return e.ok; });
}

CheckReport check_sandwich(std::size_t t, std::size_t max_row) {
  if (t < 1) throw InvalidInput("sandwich check needs t >= 1");
  if (max_row > t) throw InvalidInput("sandwich rows cannot exceed t");

  CheckReport report;
  MarginTracker tracker;
  std::size_t cells = 0;
  for (std::size_t i = 1; i <= max_row; ++i) {
    for (std::size_t j = i + 1; i + j < t; ++j) {
      const BigRat entry = ptilde_entry(t, i, j);
      const BigRat lower = rat_pow(BigRat(BigInt(j - i + 1), BigInt(t)), i);
      const BigRat upper = rat_pow(BigRat(BigInt(j), BigInt(t - i + 1)), i);
      ++cells;
      const std::string where =
          "i=" + param(i) + ",j=" + param(j);
      if (entry < lower || entry > upper) {
        CheckEntry bad;
        bad.check = "sandwich-violation";
        bad.params = {{"t", param(t)}, {"i", param(i)}, {"j", param(j)}};
        bad.ok = false;
        bad.margin = to_decimal(entry < lower ? entry - lower : upper - entry);
        report.entries.push_back(std::move(bad));
      }
      tracker.observe(entry - lower, where + " (lower)");
      tracker.observe(upper - entry, where + " (upper)");
    }
  }

  CheckEntry summary;
  summary.check = "sandwich";
  summary.params = {{"t", param(t)}, {"max_row", param(max_row)}};
  summary.ok = report.entries.empty();
  if (tracker.seen()) {
    summary.margin = to_decimal(tracker.best());
    summary.note = "checked " + std::to_string(cells) +
                   " cells; tightest at " + tracker.where();
  } else {
    summary.note = "no cell satisfies 1 <= i < j, i < t - j";
  }
  report.entries.insert(report.entries.begin(), std::move(summary));
  return report;
}

std::vector<SamplePoint> sample_points(std::size_t t, std::size_t s) {
  if (s < 1) throw InvalidInput("sample points need s >= 1");
  if (t < (s + 2) * (s + 2)) {
    throw InvalidInput("sample points need t >= (s+2)^2, got t=" + param(t) +
                       ", s=" + param(s));
  }
  std::vector<SamplePoint> points;
  points.reserve(s + 1);
  std::size_t previous = 0;
  for (std::size_t ell = 1; ell <= s + 1; ++ell) {
    SamplePoint pt;
    pt.ell = ell;
    pt.lambda = ell * t / (s + 2);
    if (ell > 1 && pt.lambda <= previous) {
      throw InvalidInput("sample columns are not strictly increasing");
    }
    previous = pt.lambda;
    pt.column.reserve(s + 1);
    for (std::size_t i = 0; i <= s; ++i) {
      pt.column.push_back(ptilde_entry(t, i, pt.lambda));
    }
    points.push_back(std::move(pt));
  }
  return points;
}

CheckReport check_vandermonde_error(std::size_t t, std::size_t s,
                                    unsigned exp_terms) {
  if (s < 1) throw InvalidInput("vandermonde check needs s >= 1");
  if (t < 4 * (s + 2) * (s + 2)) {
    throw InvalidInput("vandermonde check needs t >= 4(s+2)^2");
  }
  if (BigInt(4) * BigInt(s) * s * s > t) {
    // exp_bounds only covers |x| <= 1; x = 4 s^3 / t.
    throw InvalidInput("vandermonde check needs t >= 4 s^3");
  }

  const BigRat x(BigInt(4) * BigInt(s) * s * s, BigInt(t));
  const RatInterval grow = exp_bounds(x, exp_terms);    // e^{x}
  const RatInterval shrink = exp_bounds(-x, exp_terms); // e^{-x}

  CheckReport report;
  MarginTracker tracker;
  const std::vector<SamplePoint> points = sample_points(t, s);
  std::size_t cells = 0;
  for (const SamplePoint& pt : points) {
    for (std::size_t i = 0; i <= s; ++i) {
      const BigRat base = rat_pow(BigRat(BigInt(pt.ell), BigInt(s + 2)), i);
      const BigRat lower = base * shrink.lo;
      const BigRat upper = base * grow.hi;
      const BigRat& entry = pt.column[i];
      ++cells;
      const std::string where = "ell=" + param(pt.ell) + ",i=" + param(i);
      if (entry < lower || entry > upper) {
        CheckEntry bad;
        bad.check = "vandermonde-violation";
        bad.params = {{"t", param(t)},
                      {"s", param(s)},
                      {"ell", param(pt.ell)},
                      {"i", param(i)}};
        bad.ok = false;
        bad.margin = to_decimal(entry < lower ? entry - lower : upper - entry);
        report.entries.push_back(std::move(bad));
      }
      tracker.observe(entry - lower, where + " (lower)");
      tracker.observe(upper - entry, where + " (upper)");
    }
  }

  CheckEntry summary;
  summary.check = "vandermonde";
  summary.params = {{"t", param(t)}, {"s", param(s)}};
  summary.ok = report.entries.empty();
  summary.margin = tracker.seen() ? to_decimal(tracker.best()) : "";
  summary.note = "checked " + std::to_string(cells) + " cells against e^{+-" +
                 to_decimal(x) + "} envelopes" +
                 (tracker.seen() ? "; tightest at " + tracker.where() : "");
  report.entries.insert(report.entries.begin(), std::move(summary));
  return report;
}

QuadraticForm build_q(std::size_t s) {
  if (s < 1) throw InvalidInput("the quadratic form needs s >= 1");
  QuadraticForm form;
  form.s = s;
  form.q.assign(s + 1, std::vector<BigRat>(s + 1));
  for (std::size_t a = 0; a <= s; ++a) {
    for (std::size_t b = a; b <= s; ++b) {
      BigRat sum = 0;
      for (std::size_t ell = 1; ell <= s + 1; ++ell) {
        sum += rat_pow(BigRat(BigInt(ell), BigInt(s + 2)), a + b);
      }
      form.q[a][b] = sum;
      form.q[b][a] = sum;
    }
  }
  return form;
}

BigRat rational_det(std::vector<std::vector<BigRat>> mat) {
  const std::size_t n = mat.size();
  for (const auto& row : mat) {
    if (row.size() != n) throw InvalidInput("determinant needs a square matrix");
  }
  BigRat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && mat[pivot][col] == 0) ++pivot;
    if (pivot == n) return BigRat(0);
    if (pivot != col) {
      std::swap(mat[pivot], mat[col]);
      det = -det;
    }
    det *= mat[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (mat[row][col] == 0) continue;
      const BigRat factor = mat[row][col] / mat[col][col];
      for (std::size_t k = col; k < n; ++k) {
        mat[row][k] -= factor * mat[col][k];
      }
    }
  }
  return det;
}

std::vector<BigRat> leading_principal_minors(
    const std::vector<std::vector<BigRat>>& mat) {
  std::vector<BigRat> minors;
  minors.reserve(mat.size());
  for (std::size_t k = 1; k <= mat.size(); ++k) {
    std::vector<std::vector<BigRat>> block(k, std::vector<BigRat>(k));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) block[r][c] = mat[r][c];
    }
    minors.push_back(rational_det(std::move(block)));
  }
  return minors;
}

namespace {

bool all_positive(const std::vector<BigRat>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](const BigRat& v) { return v > 0; });
}

std::vector<BigRat> shifted_minors(const QuadraticForm& form, const BigRat& c) {
  std::vector<std::vector<BigRat>> shifted = form.q;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] -= c;
  return leading_principal_minors(shifted);
}

}  // namespace

SpectralReport q_spectral_report(std::size_t s) {
  const QuadraticForm form = build_q(s);
  SpectralReport report;
  report.s = s;
  report.det_q = rational_det(form.q);
  report.det_lower_bound =
      1 / rat_pow(BigRat(BigInt(s + 2)), 2 * s * (s + 1));
  report.det_ok = report.det_q >= report.det_lower_bound;

  // lambda_1 <= trace <= (s+1)^2, so det / ((s+1)^2)^k bounds lambda_min
  // from below once k counts the other s eigenvalues.
  const BigRat lambda1_bound = rat_pow(BigRat(BigInt(s + 1)), 2);
  report.chain_bound = report.det_q / rat_pow(lambda1_bound, s - 1);
  report.corrected_chain_bound = report.det_q / rat_pow(lambda1_bound, s);
  report.eigen_target =
      1 / rat_pow(BigRat(BigInt(10) * BigInt(s)), 10 * s * s);
  report.chain_ok = report.chain_bound >= report.eigen_target;

  report.chain_minors = shifted_minors(form, report.chain_bound);
  report.psd_chain_ok = all_positive(report.chain_minors);
  report.psd_corrected_ok =
      all_positive(shifted_minors(form, report.corrected_chain_bound));
  report.psd_eigen_ok = all_positive(shifted_minors(form, report.eigen_target));
  return report;
}

CheckReport check_bbound(std::size_t t, const std::vector<WeightVector>& sample) {
  CheckReport report;
  for (std::size_t idx = 0; idx < sample.size(); ++idx) {
    const WeightVector& w = sample[idx];
    const BCoefficients bc = recover_b(w);
    BigInt c_sum = 0;
    for (const BigInt& coef : bc.b) c_sum += boost::multiprecision::abs(coef);

    BigInt coarse = BigInt(bc.s + 1) * BigInt(bc.s + 1);
    for (std::size_t i = 0; i < bc.s; ++i) coarse *= t;

    // (20 s)^{20 s^2}; trivially 1 when s = 0.
    BigInt strong = 1;
    const BigInt base = BigInt(20) * BigInt(bc.s);
    for (std::size_t i = 0; i < 20 * bc.s * bc.s; ++i) strong *= base;

    CheckEntry entry;
    entry.check = "bbound";
    entry.params = {{"t", param(t)},
                    {"sample", param(idx)},
                    {"s", param(bc.s)},
                    {"C", to_decimal(c_sum)}};
    entry.ok = c_sum <= coarse;
    entry.margin = to_decimal(BigInt(coarse - c_sum));
    entry.note = c_sum <= strong ? "within (20s)^(20 s^2)"
                                 : "exceeds (20s)^(20 s^2)";
    report.entries.push_back(std::move(entry));
  }
  return report;
}

CheckReport run_lemma_checks(std::size_t t, std::optional<std::size_t> s) {
  CheckReport report;

  CheckEntry dual;
  dual.check = "dual-basis";
  dual.params = {{"t", param(t)}};
  dual.ok = check_dual_basis(t);
  dual.margin = dual.ok ? "0" : "";
  dual.note = "u_i . v_k = delta exact";
  report.entries.push_back(std::move(dual));

  if (t >= 1) {
    const std::size_t rows = std::min<std::size_t>(t, s.value_or(8));
    CheckReport sandwich = check_sandwich(t, rows);
    report.entries.insert(report.entries.end(), sandwich.entries.begin(),
                          sandwich.entries.end());
  }

  if (s.has_value() && *s >= 1) {
    const std::size_t sv = *s;
    const SpectralReport spectral = q_spectral_report(sv);
    auto add = [&report, sv](const std::string& name, bool ok,
                             const BigRat& margin, const std::string& note) {
      CheckEntry entry;
      entry.check = name;
      entry.params = {{"s", param(sv)}};
      entry.ok = ok;
      entry.margin = to_decimal(margin);
      entry.note = note;
      report.entries.push_back(std::move(entry));
    };
    add("q-det-lower-bound", spectral.det_ok,
        spectral.det_q - spectral.det_lower_bound,
        "det(Q) vs (s+2)^(-2s(s+1))");
    add("q-chain-vs-target", spectral.chain_ok,
        spectral.chain_bound - spectral.eigen_target,
        "det/(s+1)^(2(s-1)) vs (10s)^(-10 s^2)");
    add("q-psd-chain-bound", spectral.psd_chain_ok,
        *std::min_element(spectral.chain_minors.begin(),
                          spectral.chain_minors.end()),
        "minors of Q - chain*I; the s-1 exponent is one short, fails at s=1");
    add("q-psd-corrected-chain", spectral.psd_corrected_ok,
        spectral.corrected_chain_bound, "minors of Q - det/(s+1)^(2s)*I");
    add("q-psd-eigen-target", spectral.psd_eigen_ok, spectral.eigen_target,
        "minors of Q - (10s)^(-10 s^2)*I");

    if (t >= 4 * (sv + 2) * (sv + 2) && BigInt(4) * BigInt(sv) * sv * sv <= t) {
      CheckReport vdm = check_vandermonde_error(t, sv);
      report.entries.insert(report.entries.end(), vdm.entries.begin(),
                            vdm.entries.end());
    } else {
      CheckEntry skip;
      skip.check = "vandermonde";
      skip.params = {{"t", param(t)}, {"s", param(sv)}};
      skip.ok = true;
      skip.note = "skipped: needs t >= 4(s+2)^2 and t >= 4 s^3";
      report.entries.push_back(std::move(skip));
    }
  }

  return report;
}

}  // namespace snzlab
