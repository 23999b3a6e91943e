#include "smz/transport.hpp"

#include "smz/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smz {

namespace odeint = boost::numeric::odeint;

void ConnectionPair::validate() const {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw std::invalid_argument("connection matrices must be square of equal size");
}

namespace {

double logistic(double u) { return u >= 0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u)); }
double logit(double x) { return std::log(x) - std::log1p(-x); }

void check_interval(double a, double b) {
  if (!(a > 0 && a < 1 && b > 0 && b < 1)) throw std::domain_error("transport endpoints must lie in (0, 1)");
}

Mat mat_pow(const Mat& M, double t) {
  // exp(t M)
  Mat tm = t * M;
  return tm.exp();
}

}  // namespace

Mat transport_ode(const ConnectionPair& c, double x_from, double x_to, double tol) {
  c.validate();
  check_interval(x_from, x_to);
  if (tol < 1e-14) throw std::invalid_argument("transport_ode: tolerance below 1e-14");
  const int d = c.dim();
  using state = std::vector<double>;
  state y(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) y[static_cast<std::size_t>(i) * d + i] = 1.0;
  auto rhs = [&](const state& s, state& ds, double u) {
    const double x = logistic(u);
    Eigen::Map<const Mat> E(s.data(), d, d);
    Eigen::Map<Mat> dE(ds.data(), d, d);
    dE.noalias() = ((1 - x) * c.A - x * c.B) * E;
  };
  const double u0 = logit(x_from), u1 = logit(x_to);
  if (u0 == u1) return Mat::Identity(d, d);
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<state>());
  odeint::integrate_adaptive(stepper, rhs, y, u0, u1, (u1 - u0) / 64.0);
  return Eigen::Map<Mat>(y.data(), d, d);
}

namespace {

// left multiplication by a letter on a truncated series
void add_left_letter(const std::vector<double>& y, int N, Letter a, double scale, std::vector<double>& out) {
  for (int len = 0; len < N; ++len) {
    const std::size_t b0 = (std::size_t{1} << len) - 1, b1 = (std::size_t{1} << (len + 1)) - 1;
    const std::size_t high = a == Letter::Y ? (std::size_t{1} << len) : 0;
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) out[b1 + (high | bits)] += scale * y[b0 + bits];
  }
}

}  // namespace

NCSeries<double> transport_series(int N, double x_from, double x_to, double tol) {
  check_interval(x_from, x_to);
  using state = std::vector<double>;
  NCSeries<double> one = NCSeries<double>::one(N);
  state y = one.data();
  auto rhs = [&](const state& s, state& ds, double u) {
    const double x = logistic(u);
    std::fill(ds.begin(), ds.end(), 0.0);
    add_left_letter(s, N, Letter::X, 1 - x, ds);
    add_left_letter(s, N, Letter::Y, -x, ds);
  };
  const double u0 = logit(x_from), u1 = logit(x_to);
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<state>());
  if (u0 != u1) odeint::integrate_adaptive(stepper, rhs, y, u0, u1, (u1 - u0) / 64.0);
  NCSeries<double> out(N);
  out.data() = y;
  return out;
}

ConnectionPair free_algebra_connection(int N) {
  const int d = static_cast<int>(series_size(N));
  ConnectionPair c{Mat::Zero(d, d), Mat::Zero(d, d)};
  for (int col = 0; col < d; ++col) {
    std::vector<double> e(d, 0.0), ox(d, 0.0), oy(d, 0.0);
    e[col] = 1;
    add_left_letter(e, N, Letter::X, 1, ox);
    add_left_letter(e, N, Letter::Y, 1, oy);
    for (int row = 0; row < d; ++row) {
      c.A(row, col) = ox[row];
      c.B(row, col) = oy[row];
    }
  }
  return c;
}

Mat frobenius_series(const Mat& A, const Mat& B, double x, double tol) {
  if (!(x > 0 && x < 1)) throw std::domain_error("frobenius_series: x must lie in (0, 1)");
  const int d = static_cast<int>(A.rows());
  const int dd = d * d;
  Mat I = Mat::Identity(d, d);
  Mat H = I, partial = I;
  const bool kron = dd <= 1600;
  Mat adA;
  if (kron) {
    // vec(A h - h A) = (I (x) A - A^T (x) I) vec(h)
    adA = Mat::Zero(dd, dd);
    for (int j = 0; j < d; ++j) adA.block(j * d, j * d, d, d) += A;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) adA.block(j * d, i * d, d, d) -= A(i, j) * I;
  }
  double xm = 1;
  int small_run = 0;
  for (int m = 1; m <= 4000; ++m) {
    Mat r = -B * partial;
    Mat h;
    if (kron) {
      Mat K = static_cast<double>(m) * Mat::Identity(dd, dd) - adA;
      Eigen::VectorXd v = K.partialPivLu().solve(Eigen::Map<Eigen::VectorXd>(r.data(), dd));
      h = Eigen::Map<Mat>(v.data(), d, d);
    } else {
      h = Mat::Zero(d, d);
      Mat term = r / m;
      for (int q = 0; q < 400 && term.cwiseAbs().maxCoeff() > 1e-300; ++q) {
        h += term;
        term = (A * term - term * A) / m;
        if (q == 399) throw std::runtime_error("frobenius_series: Neumann series did not converge");
      }
    }
    partial += h;
    xm *= x;
    Mat t = h * xm;
    H += t;
    const double size = t.cwiseAbs().maxCoeff();
    small_run = size < tol * std::max(1.0, H.cwiseAbs().maxCoeff()) ? small_run + 1 : 0;
    if (small_run >= 3) return H;
  }
  throw std::runtime_error("frobenius_series: no convergence");
}

namespace {

NCSeries<double> series_inverse(const NCSeries<double>& s) {
  if (s.constant() == 0) throw std::domain_error("series_inverse: zero constant term");
  const int N = s.truncation();
  NCSeries<double> u = s * (1.0 / s.constant());
  NCSeries<double> q = NCSeries<double>::one(N) - u;
  NCSeries<double> out = NCSeries<double>::one(N), p = NCSeries<double>::one(N);
  for (int k = 1; k <= N; ++k) {
    p = p * q;
    out += p;
  }
  return out * (1.0 / s.constant());
}

double series_max_abs(const NCSeries<double>& s) {
  double m = 0;
  for (double v : s.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

NCSeries<double> frobenius_series(const NCSeries<double>& A, const NCSeries<double>& B, double x, double tol) {
  if (!(x > 0 && x < 1)) throw std::domain_error("frobenius_series: x must lie in (0, 1)");
  const int N = A.truncation();
  NCSeries<double> H = NCSeries<double>::one(N), partial = NCSeries<double>::one(N);
  double xm = 1;
  int small_run = 0;
  for (int m = 1; m <= 4000; ++m) {
    NCSeries<double> r = -(B * partial);
    NCSeries<double> h(N), term = r * (1.0 / m);
    for (int q = 0; q <= 400; ++q) {
      if (series_max_abs(term) == 0) break;
      h += term;
      term = (A * term - term * A) * (1.0 / m);
      if (q == 400) throw std::runtime_error("frobenius_series: Neumann series did not converge");
    }
    partial += h;
    xm *= x;
    NCSeries<double> t = h * xm;
    H += t;
    small_run = series_max_abs(t) < tol * std::max(1.0, series_max_abs(H)) ? small_run + 1 : 0;
    if (small_run >= 3) return H;
  }
  throw std::runtime_error("frobenius_series: no convergence");
}

Mat regularized_limit(const ConnectionPair& c, int side, double x, const Mat& s_x) {
  c.validate();
  if (side == 0) {
    Mat H = frobenius_series(c.A, c.B, x);
    return mat_pow(c.A, -std::log(x)) * H.partialPivLu().solve(s_x);
  }
  if (side == 1) {
    Mat H = frobenius_series(c.B, c.A, 1 - x);
    return mat_pow(c.B, -std::log1p(-x)) * H.partialPivLu().solve(s_x);
  }
  throw std::invalid_argument("regularized_limit: side must be 0 or 1");
}

ResonanceInfo resonance_info(const Mat& M) {
  Eigen::EigenSolver<Mat> es(M, true);
  ResonanceInfo info;
  info.integer_distance = INFINITY;
  info.min_gap = INFINITY;
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = 0; j < ev.size(); ++j) {
      if (i == j) continue;
      std::complex<double> diff = ev(i) - ev(j);
      double re = diff.real();
      double nearest = std::round(re);
      if (nearest == 0) nearest = re >= 0 ? 1 : -1;
      info.integer_distance = std::min(info.integer_distance, std::abs(diff - std::complex<double>(nearest, 0)));
      double g = std::abs(diff);
      if (g > 1e-9) info.min_gap = std::min(info.min_gap, g);
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(es.eigenvectors());
  const auto& sv = svd.singularValues();
  info.diagonalizable = sv(sv.size() - 1) > 1e-8 * sv(0);
  return info;
}

TransportResult regularized_limit_ladder(const ConnectionPair& c, int side, const std::function<Mat(double)>& s,
                                         double eps0, int rungs, int orders) {
  c.validate();
  if (side != 0 && side != 1) throw std::invalid_argument("regularized_limit_ladder: side must be 0 or 1");
  const Mat& R = side == 0 ? c.A : c.B;
  Eigen::EigenSolver<Mat> es(R, true);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i).imag()) > 1e-10) throw std::domain_error("residue spectrum is not real");
  ResonanceInfo info = resonance_info(R);
  if (!info.diagonalizable) throw std::domain_error("residue matrix is not semi-simple");
  Mat P = es.eigenvectors().real();
  Eigen::VectorXd lam = es.eigenvalues().real();
  Eigen::PartialPivLU<Mat> Plu(P);
  const int d = static_cast<int>(R.rows());

  std::vector<double> eps(rungs);
  for (int k = 0; k < rungs; ++k) eps[k] = eps0 * std::ldexp(1.0, -k);
  std::vector<Mat> samples = parallel_map<Mat>(rungs, [&](std::size_t k) {
    const double e = eps[k];
    const double x = side == 0 ? e : 1 - e;
    return Mat(Plu.solve(mat_pow(R, -std::log(e)) * s(x)));
  });
  const int cols = static_cast<int>(samples[0].cols());

  auto fit = [&](int used, Mat& V) {
    V = Mat::Zero(d, cols);
    for (int i = 0; i < d; ++i) {
      std::vector<double> ex;
      for (int m = 1; m <= orders; ++m)
        for (int j = 0; j < d; ++j) {
          double e = m + lam(j) - lam(i);
          bool dup = false;
          for (double f : ex) {
            if (std::abs(f - e) < 1e-9) dup = true;
            else if (std::abs(f - e) < 1e-3) throw std::domain_error("regularized_limit_ladder: eigenvalue gap below 1e-3");
          }
          if (!dup) ex.push_back(e);
        }
      const int nb = 1 + static_cast<int>(ex.size());
      if (nb > used) throw std::invalid_argument("regularized_limit_ladder: too few rungs for the model");
      Mat D(used, nb), Y(used, cols);
      for (int k = 0; k < used; ++k) {
        const int src = rungs - used + k;  // keep the smallest e
        D(k, 0) = 1;
        for (int b = 1; b < nb; ++b) D(k, b) = std::pow(eps[src], ex[b - 1]);
        Y.row(k) = samples[src].row(i);
      }
      Mat coef = D.colPivHouseholderQr().solve(Y);
      V.row(i) = coef.row(0);
    }
  };
  Mat V, Vless;
  fit(rungs, V);
  fit(rungs - 1, Vless);
  TransportResult res;
  res.value = P * V;
  res.err_estimate = (P * (V - Vless)).cwiseAbs().maxCoeff();
  res.eps = eps.back();
  res.extrapolation_order = orders;
  return res;
}

Mat rho_phi(const ConnectionPair& c, double x) {
  c.validate();
  Mat H0 = frobenius_series(c.A, c.B, x);
  Mat H1 = frobenius_series(c.B, c.A, 1 - x);
  return mat_pow(c.B, -std::log1p(-x)) * H1.partialPivLu().solve(H0 * mat_pow(c.A, std::log(x)));
}

Mat rho_phi_split(const ConnectionPair& c, double x0, double x1, double tol) {
  c.validate();
  Mat H0 = frobenius_series(c.A, c.B, x0);
  Mat H1 = frobenius_series(c.B, c.A, 1 - x1);
  Mat T = transport_ode(c, x0, x1, tol);
  return mat_pow(c.B, -std::log1p(-x1)) * H1.partialPivLu().solve(T * H0 * mat_pow(c.A, std::log(x0)));
}

NCSeries<double> associator_numeric(int N) {
  if (N < 0 || N > 8) throw std::invalid_argument("associator_numeric: truncation must be in [0, 8]");
  const double x = 0.5;
  NCSeries<double> X = NCSeries<double>::letter(N, Letter::X), Y = NCSeries<double>::letter(N, Letter::Y);
  NCSeries<double> H0 = frobenius_series(X, Y, x);
  NCSeries<double> H1 = frobenius_series(Y, X, 1 - x);
  return series_exp(Y * (-std::log1p(-x))) * series_inverse(H1) * H0 * series_exp(X * std::log(x));
}

AssociatorLadder associator_ladder(int N, double eps0, int rungs) {
  if (N < 1 || N > 6) throw std::invalid_argument("associator_ladder: truncation must be in [1, 6]");
  const int nb = 1 + 2 * (N + 1);  // 1, e log^j e, e^2 log^j e
  if (rungs <= 0) rungs = nb + 4;
  if (rungs < nb + 1) throw std::invalid_argument("associator_ladder: too few rungs");
  AssociatorLadder res;
  for (int k = 0; k < rungs; ++k) res.eps.push_back(eps0 * std::ldexp(1.0, -k));
  NCSeries<double> X = NCSeries<double>::letter(N, Letter::X), Y = NCSeries<double>::letter(N, Letter::Y);
  auto phis = parallel_map<NCSeries<double>>(rungs, [&](std::size_t k) {
    const double e = res.eps[k];
    NCSeries<double> E = transport_series(N, e, 1 - e);
    return series_exp(Y * (-std::log(e))) * E * series_exp(X * std::log(e));
  });
  auto fit = [&](int first) {
    const int used = rungs - first;
    Mat D(used, nb);
    for (int k = 0; k < used; ++k) {
      const double e = res.eps[first + k], le = std::log(e);
      D(k, 0) = 1;
      for (int j = 0; j <= N; ++j) {
        D(k, 1 + j) = e * std::pow(le, j);
        D(k, 2 + N + j) = e * e * std::pow(le, j);
      }
    }
    const int m = static_cast<int>(phis[0].size());
    Mat Yv(used, m);
    for (int k = 0; k < used; ++k)
      for (int c = 0; c < m; ++c) Yv(k, c) = phis[first + k].data()[c];
    Mat coef = D.colPivHouseholderQr().solve(Yv);
    NCSeries<double> out(N);
    for (int c = 0; c < m; ++c) out.data()[c] = coef(0, c);
    return out;
  };
  res.value = fit(0);
  NCSeries<double> alt = fit(1);
  res.err_estimate = series_max_abs(res.value - alt);
  return res;
}

HRElement associator_symbolic(int N) {
  if (N < 0 || N > mzv_max_weight) throw std::invalid_argument("associator_symbolic: truncation must be in [0, 8]");
  HRElement h;
  h.N = N;
  for (std::size_t i = 0; i < series_size(N); ++i) {
    Word w = Word::from_index(i);
    MZVCombo c = shuffle_regularize(w);
    if (w.count(Letter::Y) % 2 == 1) c *= Rational(-1);
    if (!c.is_zero()) h.coeffs[w] = c;
  }
  return h;
}

std::vector<ConventionScore> associator_convention_scores(int N) {
  NCSeries<double> num = associator_numeric(N);
  struct Cand {
    std::string name;
    int map;  // 0 word, 1 reversed, 2 swapped-reversed
    bool sign;
  };
  const std::vector<Cand> cands = {{"word", 0, false},
                                   {"sign(-1)^#Y,word", 0, true},
                                   {"reversed", 1, false},
                                   {"sign(-1)^#Y,reversed", 1, true},
                                   {"swapped-reversed", 2, false},
                                   {"sign(-1)^#Y,swapped-reversed", 2, true}};
  std::vector<ConventionScore> out;
  for (const auto& c : cands) {
    double dev = 0;
    for (std::size_t i = 0; i < series_size(N); ++i) {
      Word w = Word::from_index(i);
      if (w.len < 2) continue;
      Word v = c.map == 0 ? w : c.map == 1 ? w.reversed() : w.swapped().reversed();
      double val = shuffle_regularize(v).evaluate();
      if (c.sign && w.count(Letter::Y) % 2 == 1) val = -val;
      dev = std::max(dev, std::abs(val - num[w]));
    }
    out.push_back({c.name, dev});
  }
  return out;
}

double MixedEntry::evaluate(const std::vector<double>& alpha) const {
  double s = 0;
  for (const auto& [key, q] : terms) {
    double m = 1;
    for (int i = 0; i < mono::degree(key.first); ++i) m *= alpha.at(mono::symbol(key.first, i));
    double z = 1;
    if (!key.second.empty()) {
      MZVCombo c;
      c.terms[key.second] = 1;
      z = c.evaluate();
    }
    s += q.get_d() * m * z;
  }
  return s;
}

bool MixedEntry::weight_graded() const {
  for (const auto& [key, q] : terms) {
    const int w = key.second.empty() ? 0 : weight(key.second);
    if (w != mono::degree(key.first)) return false;
  }
  return true;
}

std::string MixedEntry::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, q] : terms) {
    if (!first) os << (sgn(q) < 0 ? " - " : " + ");
    else if (sgn(q) < 0) os << "-";
    Rational a = abs(q);
    std::vector<std::string> f;
    if (a != 1 || (mono::degree(key.first) == 0 && key.second.empty())) f.push_back(a.get_str());
    if (mono::degree(key.first) > 0) f.push_back(mono::to_string(key.first));
    if (!key.second.empty()) f.push_back("z" + index_to_string(key.second));
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "*" : "") << f[i];
    first = false;
  }
  return os.str();
}

Mat MixedMatrix::evaluate(const std::vector<double>& alpha) const {
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = (*this)(i, j).evaluate(alpha);
  return m;
}

namespace {

void require_degree_one(const IntPolyMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      for (const auto& [k, c] : m(i, j).terms())
        if (mono::degree(k) != 1) throw std::domain_error("rho_apply: representation is not homogeneous of degree 1");
}

template <class M, class Visit>
void visit_words(const M& rx, const M& ry, const M& cur, Word w, int N, const Visit& visit) {
  visit(w, cur);
  if (w.len >= N) return;
  // rho(a w) = rho(a) rho(w): extend on the left
  Word xw = letter_word(Letter::X).concat(w), yw = letter_word(Letter::Y).concat(w);
  visit_words(rx, ry, M(rx * cur), xw, N, visit);
  visit_words(rx, ry, M(ry * cur), yw, N, visit);
}

}  // namespace

MixedMatrix rho_apply(const HRElement& s, const IntPolyMatrix& rx, const IntPolyMatrix& ry) {
  if (rx.rows() != rx.cols() || ry.rows() != ry.cols() || rx.rows() != ry.rows())
    throw std::invalid_argument("rho_apply: shape mismatch");
  require_degree_one(rx);
  require_degree_one(ry);
  const int d = rx.rows();
  MixedMatrix out;
  out.dim = d;
  out.e.resize(static_cast<std::size_t>(d) * d);
  visit_words(rx, ry, IntPolyMatrix::identity(d), Word(), s.N, [&](const Word& w, const IntPolyMatrix& m) {
    auto it = s.coeffs.find(w);
    if (it == s.coeffs.end()) return;
    const MZVCombo& c = it->second;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (const auto& [key, q] : m(i, j).terms()) {
          Rational qq(static_cast<long>(q));
          if (sgn(c.constant) != 0) out(i, j).terms[{key, MZVIndex{}}] += qq * c.constant;
          for (const auto& [k, z] : c.terms) out(i, j).terms[{key, k}] += qq * z;
        }
  });
  for (auto& e : out.e)
    for (auto it = e.terms.begin(); it != e.terms.end();) it = sgn(it->second) == 0 ? e.terms.erase(it) : std::next(it);
  return out;
}

Mat rho_apply_numeric(const NCSeries<double>& s, const Mat& rx, const Mat& ry) {
  const int d = static_cast<int>(rx.rows());
  Mat out = Mat::Zero(d, d);
  visit_words(rx, ry, Mat(Mat::Identity(d, d)), Word(), s.truncation(), [&](const Word& w, const Mat& m) {
    const double c = s[w];
    if (c != 0) out += c * m;
  });
  return out;
}

IndexTuple drop_vertex_tuple(const IndexTuple& I, int v, int new_r) {
  I.validate();
  auto f = [v](int u) { return u < v ? u : u - 1; };
  IndexTuple J;
  J.r = new_r;
  for (int p = I.r + 1; p <= I.n(); ++p) {
    if (I.at(p) == v) throw std::invalid_argument("drop_vertex_tuple: tuple uses the dropped vertex");
    J.idx.push_back(f(I.at(p)));
  }
  if (J.r + static_cast<int>(J.idx.size()) != I.n() - 1)
    throw std::invalid_argument("drop_vertex_tuple: root count does not match");
  J.validate();
  return J;
}

ExponentAssignment drop_two_exponents(const ExponentAssignment& a) {
  const int n = a.n;
  ExponentAssignment b(n - 1);
  auto f = [](int u) { return u < 2 ? u : u - 1; };
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) {
      if (i == 2 || j == 2) continue;
      b.set(f(i), f(j), a.get(i, j));
    }
  return b;
}

ExponentAssignment drop_three_exponents(const ExponentAssignment& a) {
  const int n = a.n;
  ExponentAssignment b(n - 1);
  auto f = [](int u) { return u < 3 ? u : u - 1; };
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) {
      if (i == 3 || j == 3) continue;
      double v = a.get(i, j);
      if (i == 2 || j == 2) {
        const int other = i == 2 ? j : i;
        v += a.get(3, other);
      }
      b.set(f(i), f(j), v);
    }
  return b;
}

namespace {

bool uses_vertex(const IndexTuple& I, int v) {
  for (int x : I.idx)
    if (x == v) return true;
  return false;
}

}  // namespace

ProjectionReport projection_identity_check(int n, const std::vector<double>& alpha, const ProjectionOptions& opt) {
  if (n < 4 || n > 5) throw std::invalid_argument("projection_identity_check: n must be 4 or 5");
  if (static_cast<int>(alpha.size()) != symbol_count(n)) throw std::invalid_argument("alpha has the wrong size");
  ProjectionReport rep;
  rep.n = n;
  rep.alpha = alpha;
  ExponentAssignment a = exponents_from_list(n, alpha);
  Tower tower = build_tower(n, 3);
  const BraidFamily& fam = tower.level(3);
  ConnectionPair conn{specialize(fam.A(1, 3), alpha), specialize(fam.A(2, 3), alpha)};
  rep.resonance_distance = std::min(resonance_info(conn.A).integer_distance, resonance_info(conn.B).integer_distance);
  if (rep.resonance_distance < 1e-3) throw std::domain_error("projection_identity_check: resonant exponents");

  const int dim = static_cast<int>(tower_dimension(n, 3));
  SelbergOptions so;
  so.tol = opt.tol;
  ExponentAssignment a1 = drop_two_exponents(a), a2 = drop_three_exponents(a);
  struct Comp {
    double v1 = 0, v2 = 0, err = 0;
    bool projected = false;
  };
  auto comps = parallel_map<Comp>(dim, [&](std::size_t c) {
    Comp out;
    IndexTuple I = coordinate_tuple(n, 3, static_cast<int>(c));
    if (!uses_vertex(I, 2)) {
      auto q = integrate_sum(wedge_chain(drop_vertex_tuple(I, 2, 2)), a1, so);
      out.v1 = q.value;
      out.err += q.err_estimate;
    }
    if (!uses_vertex(I, 2) && !uses_vertex(I, 3)) {
      out.projected = true;
      auto q = integrate_sum(wedge_chain(drop_vertex_tuple(I, 3, 2)), a2, so);
      out.v2 = q.value;
      out.err += q.err_estimate;
    }
    return out;
  });
  Eigen::VectorXd V1(dim);
  for (int c = 0; c < dim; ++c) {
    V1(c) = comps[c].v1;
    rep.V1.push_back(comps[c].v1);
    rep.V2.push_back(comps[c].v2);
    rep.quadrature_err = std::max(rep.quadrature_err, comps[c].err);
    if (comps[c].projected) rep.projected.push_back(c);
  }
  Mat phi = rho_phi(conn);
  rep.rho_route_difference = (phi - rho_phi_split(conn)).cwiseAbs().maxCoeff();
  Eigen::VectorXd rhs = phi * V1;
  for (int c : rep.projected) {
    rep.lhs.push_back(comps[c].v2);
    rep.rhs.push_back(rhs(c));
    rep.defect = std::max(rep.defect, std::abs(comps[c].v2 - rhs(c)));
  }
  if (opt.symbolic_degree > 0) {
    Mat phis = rho_apply_numeric(associator_symbolic(opt.symbolic_degree).evaluate(), conn.A, conn.B);
    rep.symbolic_difference = (phis - phi).cwiseAbs().maxCoeff();
    Eigen::VectorXd r2 = phis * V1;
    rep.symbolic_defect = 0;
    for (int c : rep.projected) rep.symbolic_defect = std::max(rep.symbolic_defect, std::abs(comps[c].v2 - r2(c)));
  }
  return rep;
}

LadderLimitReport ladder_limit_check(int n, const std::vector<double>& alpha, double eps0, int rungs) {
  if (n != 4) throw std::invalid_argument("ladder_limit_check: only n = 4 is supported");
  ProjectionReport direct = projection_identity_check(n, alpha);
  ExponentAssignment a = exponents_from_list(n, alpha);
  Tower tower = build_tower(n, 3);
  const BraidFamily& fam = tower.level(3);
  ConnectionPair conn{specialize(fam.A(1, 3), alpha), specialize(fam.A(2, 3), alpha)};
  const int dim = static_cast<int>(tower_dimension(n, 3));
  double qerr = 0;
  auto sbar = [&](double x3) {
    Mat s(dim, 1);
    SelbergOptions so;
    so.r = 3;
    so.x3 = x3;
    for (int c = 0; c < dim; ++c) {
      auto q = integrate_sum(wedge_chain(coordinate_tuple(n, 3, c)), a, so);
      s(c, 0) = q.value;
      qerr = std::max(qerr, q.err_estimate);
    }
    return s;
  };
  TransportResult lim = regularized_limit_ladder(conn, 0, sbar, eps0, rungs, 2);
  LadderLimitReport rep;
  rep.direct = direct.V1;
  for (int c = 0; c < dim; ++c) {
    rep.ladder_limit.push_back(lim.value(c, 0));
    rep.deviation = std::max(rep.deviation, std::abs(lim.value(c, 0) - direct.V1[c]));
  }
  rep.err_estimate = lim.err_estimate;
  return rep;
}

double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v) {
  if (h.size() != v.size() || h.empty()) throw std::invalid_argument("extrapolate_to_zero: bad input");
  std::vector<double> p = v;
  const std::size_t m = h.size();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = 0; i + k < m; ++i) p[i] = (h[i + k] * p[i] - h[i] * p[i + 1]) / (h[i + k] - h[i]);
  return p[0];
}

AlphaLimitReport alpha_limit_check(const IndexTuple& I, const ExponentAssignment& a, const std::vector<double>& deltas) {
  I.validate();
  if (I.r != 2 || I.n() < 3 || I.at(3) != 2) throw std::invalid_argument("alpha_limit_check: need roots [2] and i_3 = 2");
  const int n = I.n();
  AlphaLimitReport rep;
  rep.which_case = 2;
  for (int p = 4; p <= n; ++p)
    if (I.at(p) == 2) rep.which_case = 1;
  rep.deltas = deltas;
  GraphSum gamma = wedge_chain(I);
  auto qs = parallel_map<QuadratureResult>(deltas.size(), [&](std::size_t k) {
    ExponentAssignment b = a;
    for (int i = 3; i <= n; ++i) b.set(2, i, deltas[k]);
    return integrate_sum(gamma, b);
  });
  for (const auto& q : qs) {
    rep.values.push_back(q.value);
    rep.quadrature_err = std::max(rep.quadrature_err, q.err_estimate);
  }
  rep.extrapolated = extrapolate_to_zero(rep.deltas, rep.values);
  if (rep.which_case == 2) {
    IndexTuple I3;
    I3.r = 3;
    I3.idx.assign(I.idx.begin() + 1, I.idx.end());
    auto q = integrate_sum(wedge_chain(drop_vertex_tuple(I3, 2, 2)), drop_two_exponents(a));
    rep.target = q.value;
    rep.quadrature_err = std::max(rep.quadrature_err, q.err_estimate);
  }
  rep.deviation = std::abs(rep.extrapolated - rep.target);
  return rep;
}

}  // namespace smz
