#include "smz/verify.hpp"

#include "smz/braid.hpp"
#include "smz/graphs.hpp"
#include "smz/mzv.hpp"
#include "smz/ncalg.hpp"
#include "smz/parallel.hpp"
#include "smz/selberg.hpp"
#include "smz/transport.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace smz {

using nlohmann::json;

json VerificationReport::to_json(bool with_timing) const {
  json j;
  j["schema_version"] = report_schema_version;
  j["check_id"] = check_id;
  j["anchor"] = anchor;
  j["inputs"] = inputs;
  j["defect"] = defect;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  json ps = json::array();
  for (const auto& p : parts)
    ps.push_back({{"name", p.name}, {"defect", p.defect}, {"tolerance", p.tolerance}, {"pass", p.pass}});
  j["parts"] = ps;
  j["details"] = details;
  if (!error.empty()) j["error"] = error;
  if (with_timing) j["runtime_s"] = runtime_s;
  return j;
}

namespace {

struct Ctx {
  const CheckConfig& cfg;
  VerificationReport& rep;

  void part(const std::string& name, double defect, double tol) {
    const double t = cfg.tol ? *cfg.tol : tol;
    rep.parts.push_back({name, defect, t, defect <= t});
  }
  bool full() const { return cfg.profile == Profile::Full; }
  int n_or(int quick, int full_n) const { return cfg.n > 0 ? cfg.n : (full() ? full_n : quick); }
};

json to_json_vec(const std::vector<double>& v) { return json(v); }

// Distinct rationals p/97 in (0, 1), 1-based with x[0] unused.
std::vector<Rational> random_rational_point(int n, std::mt19937_64& rng) {
  std::vector<int> pool(96);
  for (int i = 0; i < 96; ++i) pool[i] = i + 1;
  std::vector<Rational> x(n + 1, Rational(0));
  for (int i = 1; i <= n; ++i) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    int k = pick(rng);
    x[i] = Rational(pool[k], 97);
    pool.erase(pool.begin() + k);
  }
  return x;
}

std::vector<double> to_doubles(const std::vector<Rational>& x) {
  std::vector<double> d;
  for (const auto& v : x) d.push_back(v.get_d());
  return d;
}

// ---------------------------------------------------------------------------

void check_beta(Ctx& c) {
  const std::vector<std::pair<double, double>> pts = {{0.1, 0.2}, {0.5, 0.5}};
  const auto g = OrderedRootedGraph::parse("3 2 | (2,3)");
  double worst = 0;
  json rows = json::array();
  for (auto [a, b] : pts) {
    ExponentAssignment e(3);
    e.set(1, 3, a);
    e.set(2, 3, b);
    auto q = integrate_graph(g, e);
    const double expect = std::tgamma(1 + a) * std::tgamma(1 + b) / std::tgamma(1 + a + b);
    worst = std::max(worst, std::abs(q.value - expect));
    rows.push_back({{"alpha", a}, {"beta", b}, {"value", q.value}, {"expected", expect}, {"err", q.err_estimate}});
  }
  c.rep.inputs = {{"graph", g.str()}, {"points", rows.size()}};
  c.rep.details["points"] = rows;
  c.part("beta", worst, 1e-8);
}

void check_taylor(Ctx& c) {
  const double a = 1.0, b = 0.5;
  const int W = 4;
  const auto g = OrderedRootedGraph::parse("3 2 | (2,3)");
  ExponentAssignment dir(3);
  dir.set(1, 3, a);
  dir.set(2, 3, b);
  TaylorResult t = taylor_coefficients(GraphSum(g), dir, W);
  // exp(P), P = sum_{m>=2} (-1)^m zeta(m) (a^m + b^m - (a+b)^m) t^m / m, from
  // log Gamma(1+x) = -gamma x + sum_m zeta(m) (-x)^m / m
  auto expand = [&](bool alternating) {
    std::vector<double> p(W + 1, 0.0), e(W + 1, 0.0);
    for (int m = 2; m <= W; ++m) {
      p[m] = mzv_eval({m}).value * (std::pow(a, m) + std::pow(b, m) - std::pow(a + b, m)) / m;
      if (alternating && m % 2 == 1) p[m] = -p[m];
    }
    e[0] = 1;
    for (int k = 1; k <= W; ++k) {
      double s = 0;
      for (int j = 1; j <= k; ++j) s += j * p[j] * e[k - j];
      e[k] = s / k;
    }
    return e;
  };
  const auto e = expand(true), unsigned_e = expand(false);
  double worst = 0, worst_unsigned = 0;
  for (int k = 0; k <= W; ++k) {
    worst = std::max(worst, std::abs(t.coeffs[k] - e[k]));
    worst_unsigned = std::max(worst_unsigned, std::abs(t.coeffs[k] - unsigned_e[k]));
  }
  c.rep.inputs = {{"graph", g.str()}, {"direction", {a, b}}, {"max_weight", W}};
  c.rep.details = {{"fitted", to_json_vec(t.coeffs)},
                   {"expected", to_json_vec(e)},
                   {"without_alternating_sign", to_json_vec(unsigned_e)},
                   {"deviation_without_alternating_sign", worst_unsigned},
                   {"err_estimate", to_json_vec(t.err_estimate)},
                   {"max_imag", t.max_imag}};
  c.part("coefficients", worst, 1e-6);
}

void check_mzv(Ctx& c) {
  const double z2 = mzv_eval({2}).value;
  c.part("zeta(2)", std::abs(z2 - std::numbers::pi * std::numbers::pi / 6), 1e-12);
  // Euler's zeta(2,1) = zeta(3); in the increasing-sum convention used here this is (1,2)
  const double z12 = mzv_eval({1, 2}).value, z3 = mzv_eval({3}).value;
  c.part("zeta(1,2)=zeta(3)", std::abs(z12 - z3), 1e-12);
  std::vector<MZVIndex> idx;
  for (int w = 2; w <= 4; ++w)
    for (const auto& k : admissible_indices(w)) idx.push_back(k);
  std::vector<std::pair<MZVIndex, MZVIndex>> pairs;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i; j < idx.size(); ++j) pairs.push_back({idx[i], idx[j]});
  auto defects = parallel_map<double>(pairs.size(), [&](std::size_t i) {
    return double_shuffle_defect(pairs[i].first, pairs[i].second).max_defect();
  });
  double worst = 0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < defects.size(); ++i)
    if (defects[i] > worst) worst = defects[i], arg = i;
  c.part("double-shuffle", worst, 4e-10);
  c.rep.inputs = {{"max_weight_each", 4}, {"pairs", pairs.size()}};
  c.rep.details = {{"zeta2", z2}, {"zeta12", z12}, {"zeta3", z3}};
  if (!pairs.empty())
    c.rep.details["worst_pair"] = index_to_string(pairs[arg].first) + " x " + index_to_string(pairs[arg].second);
}

void check_pure_braid(Ctx& c) {
  const int n = c.n_or(5, 6);
  if (n < 3 || n > 6) throw std::invalid_argument("pure-braid: n must be in [3, 6]");
  Tower t = build_tower(n, 2);
  double worst = 0;
  bool homogeneous = true;
  json levels = json::array();
  for (const auto& fam : t.levels) {
    auto d = pure_braid_defects(fam);
    double m = 0;
    for (const auto& r : d) m = std::max(m, r.norm);
    worst = std::max(worst, m);
    homogeneous = homogeneous && is_degree_one_homogeneous(fam);
    levels.push_back({{"k", fam.k}, {"dim", fam.dim}, {"relations", d.size()}, {"max_defect", m}});
  }
  c.rep.inputs = {{"n", n}, {"r", 2}};
  c.rep.details = {{"levels", levels}, {"degree_one", homogeneous}};
  c.part("relations", worst, 0);
  c.part("homogeneity", homogeneous ? 0.0 : 1.0, 0);
}

std::vector<std::vector<int>> subsets_at_least_two(int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> S;
    for (int b = 0; b < k; ++b)
      if (mask & (1u << b)) S.push_back(b + 1);
    if (S.size() >= 2) out.push_back(S);
  }
  return out;
}

void check_spectrum(Ctx& c) {
  std::vector<int> ns = {4};
  if (c.cfg.n > 0)
    ns = {c.cfg.n};
  else if (c.full())
    ns = {4, 5};
  std::mt19937_64 rng(c.cfg.seed);
  double worst = 0, worst_red = 0, worst_inv = 0;
  json rows = json::array();
  for (int n : ns) {
    if (n < 3 || n > 6) throw std::invalid_argument("spectrum: n must be in [3, 6]");
    Tower t = build_tower(n, 2);
    auto alpha = sample_generic_alpha(n, rng);
    for (int k : {2, 3}) {
      if (k >= n) continue;
      for (const auto& S : subsets_at_least_two(k)) {
        auto full = spectrum(t, S, k, alpha, false);
        auto red = spectrum(t, S, k, alpha, true);
        worst = std::max(worst, full.max_deviation);
        worst_red = std::max(worst_red, red.max_deviation);
        worst_inv = std::max(worst_inv, red.invariance_residual);
        std::string s;
        for (int v : S) s += std::to_string(v);
        rows.push_back({{"n", n},
                        {"k", k},
                        {"S", s},
                        {"dim", full.dimension},
                        {"reduced_dim", red.dimension},
                        {"deviation", full.max_deviation},
                        {"reduced_deviation", red.max_deviation}});
      }
    }
  }
  c.rep.inputs = {{"n", ns}, {"k", {2, 3}}, {"seed", c.cfg.seed}};
  c.rep.details = {{"cases", rows}};
  c.part("spectrum", worst, 1e-9);
  c.part("reduced-spectrum", worst_red, 1e-9);
  c.part("reduced-invariance", worst_inv, 1e-9);
}

void check_eta_gamma(Ctx& c) {
  std::mt19937_64 rng(c.cfg.seed);
  const int nmax = c.cfg.n > 0 ? c.cfg.n : 4;
  std::vector<IndexTuple> jobs;
  for (int n = 3; n <= nmax; ++n)
    for (const auto& I : all_index_tuples(n, 2)) jobs.push_back(I);
  if (c.full() && c.cfg.n == 0) {
    auto all5 = all_index_tuples(5, 2);
    std::vector<std::size_t> pick(all5.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    std::shuffle(pick.begin(), pick.end(), rng);
    std::vector<std::size_t> chosen(pick.begin(), pick.begin() + std::min<std::size_t>(5, pick.size()));
    std::sort(chosen.begin(), chosen.end());
    for (auto i : chosen) jobs.push_back(all5[i]);
  }
  std::map<int, Tower> towers;
  for (const auto& I : jobs)
    if (!towers.count(I.n())) towers.emplace(I.n(), build_tower(I.n(), 2));
  std::vector<std::vector<Rational>> points;
  for (const auto& I : jobs) points.push_back(random_rational_point(I.n(), rng));
  auto defects = parallel_map<double>(jobs.size(), [&](std::size_t i) {
    return eta_gamma_check(towers.at(jobs[i].n()), jobs[i], points[i]).defect.get_d();
  });
  double worst = 0;
  json tuples = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    worst = std::max(worst, defects[i]);
    tuples.push_back(jobs[i].str());
  }
  // product formula on the trees of the wedge-chain supports on [n-1]
  long long mismatches = 0, cases = 0;
  const int pl_max = c.full() ? std::max(nmax, 5) : nmax;
  for (int n = 4; n <= std::min(pl_max, 5); ++n) {
    std::set<OrderedRootedGraph> graphs;
    for (const auto& I : all_index_tuples(n - 1, 2)) {
      const GraphSum chain = wedge_chain(I);
      for (const auto& [g, coef] : chain.terms()) graphs.insert(g);
    }
    auto rep = product_lemma_check(towers.count(n) ? towers.at(n) : build_tower(n, 2),
                                   std::vector<OrderedRootedGraph>(graphs.begin(), graphs.end()));
    mismatches += rep.mismatches;
    cases += rep.cases;
  }
  c.rep.inputs = {{"n_max", nmax}, {"tuples", tuples.size()}, {"seed", c.cfg.seed}};
  c.rep.details = {{"tuples", tuples}, {"product_cases", cases}};
  c.part("eta-gamma", worst, 0);
  c.part("product-formula", static_cast<double>(mismatches), 0);
}

void check_residue(Ctx& c) {
  std::mt19937_64 rng(c.cfg.seed);
  const int nmax = c.n_or(4, 5);
  const int points = 10;
  double worst_float = 0, worst_exact = 0;
  long long cases = 0;
  for (int n = 4; n <= nmax; ++n) {
    for (const auto& I : all_index_tuples(n, 2)) {
      const GraphSum chain = wedge_chain(I);
      for (const auto& [g, coef] : chain.terms()) {
        for (const auto& e : g.edges()) {
          if (e.q != n) continue;
          const int k = e.p;
          GraphSum res = residue_expand(g, I, k);
          for (int s = 0; s < points; ++s) {
            auto x = random_rational_point(n, rng);
            std::vector<Rational> xr(x.begin(), x.end() - 1);
            Rational lhs = residue_coefficient<Rational>(g, k, x);
            Rational rhs(0);
            for (const auto& [h, hc] : res.terms()) rhs += Rational(static_cast<long>(hc)) * omega_coefficient<Rational>(h, xr);
            worst_exact = std::max(worst_exact, Rational(abs(lhs - rhs)).get_d());
            auto xd = to_doubles(x);
            std::vector<double> xdr(xd.begin(), xd.end() - 1);
            double l = residue_coefficient<double>(g, k, xd), r = 0;
            for (const auto& [h, hc] : res.terms()) r += static_cast<double>(hc) * omega_coefficient<double>(h, xdr);
            worst_float = std::max(worst_float, std::abs(l - r) / std::max(1.0, std::abs(l)));
            ++cases;
          }
        }
      }
    }
  }
  long long principal_mismatch = 0, tuples = 0;
  for (int n = 3; n <= 6; ++n)
    for (const auto& I : all_index_tuples(n, 2)) {
      ++tuples;
      if (!(wedge_chain(I) == principal_product(I))) ++principal_mismatch;
    }
  c.rep.inputs = {{"n_max", nmax}, {"points_per_case", points}, {"seed", c.cfg.seed}};
  c.rep.details = {{"cases", cases}, {"principal_tuples", tuples}};
  c.part("residue-float", worst_float, 1e-10);
  c.part("residue-exact", worst_exact, 0);
  c.part("wedge=principal", static_cast<double>(principal_mismatch), 0);
}

void check_sum_relation(Ctx& c) {
  std::mt19937_64 rng(c.cfg.seed);
  const int n = c.cfg.n > 0 ? c.cfg.n : 4;
  if (n < 3 || n > 5) throw std::invalid_argument("sum-relation: n must be in [3, 5]");
  auto alpha = sample_generic_alpha(n, rng);
  ExponentAssignment a = exponents_from_list(n, alpha);
  std::vector<std::pair<IndexTuple, int>> jobs;
  for (int p = 3; p <= n; ++p)
    for (const auto& I : all_index_tuples(n, 2))
      if (I.at(p) == 1) jobs.push_back({I, p});
  double worst = 0, err = 0;
  json rows = json::array();
  for (const auto& [I, p] : jobs) {
    auto r = sum_relation_defect(I, p, a);
    worst = std::max(worst, r.sum);
    err = std::max(err, r.err_estimate);
    rows.push_back({{"tuple", I.str()}, {"p", p}, {"sum", r.sum}, {"components", r.components}});
  }
  c.rep.inputs = {{"n", n}, {"alpha", alpha}, {"seed", c.cfg.seed}};
  c.rep.details = {{"relations", rows}, {"quadrature_err", err}};
  c.part("sum", worst, 1e-7);
}

void check_associator(Ctx& c) {
  const int N = 4;
  NCSeries<double> phi = associator_numeric(N);
  const double z2 = mzv_eval({2}).value;
  const Word X = Word::parse("X"), Y = Word::parse("Y"), XY = Word::parse("XY"), YX = Word::parse("YX");
  c.part("degree-one", std::max(std::abs(phi[X]), std::abs(phi[Y])), 1e-7);
  c.part("|c(XY)|=zeta(2)", std::abs(std::abs(phi[XY]) - z2), 1e-6);
  c.part("c(XY)=-c(YX)", std::abs(phi[XY] + phi[YX]), 1e-6);
  c.part("grouplike", grouplike_defect(phi).defect, 1e-8);
  NCSeries<double> sym = associator_symbolic(N).evaluate();
  double worst = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) worst = std::max(worst, std::abs(phi.data()[i] - sym.data()[i]));
  c.part("symbolic", worst, 1e-5);
  auto scores = associator_convention_scores(3);
  double chosen = INFINITY, best_other = INFINITY;
  json sc = json::object();
  for (const auto& s : scores) {
    sc[s.name] = s.max_deviation;
    if (s.name == associator_convention)
      chosen = s.max_deviation;
    else
      best_other = std::min(best_other, s.max_deviation);
  }
  c.part("convention", chosen, 1e-8);
  c.rep.inputs = {{"truncation", N}, {"convention", associator_convention}};
  c.rep.details = {{"c_XY", phi[XY]}, {"c_YX", phi[YX]}, {"zeta2", z2}, {"convention_scores", sc},
                   {"runner_up_deviation", best_other}};
  if (c.full()) {
    auto lad = associator_ladder(N);
    double dev = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) dev = std::max(dev, std::abs(phi.data()[i] - lad.value.data()[i]));
    c.rep.details["ladder_deviation"] = dev;
    c.rep.details["ladder_err_estimate"] = lad.err_estimate;
  }
}

void check_projection(Ctx& c) {
  std::mt19937_64 rng(c.cfg.seed);
  const int n = c.cfg.n > 0 ? c.cfg.n : 4;
  const int samples = 3;
  double worst = 0;
  json rows = json::array();
  for (int s = 0; s < samples; ++s) {
    auto alpha = sample_generic_alpha(n, rng);
    ProjectionOptions opt;
    opt.symbolic_degree = c.full() ? 6 : 0;
    auto r = projection_identity_check(n, alpha, opt);
    worst = std::max(worst, r.defect);
    json row = {{"alpha", alpha},         {"defect", r.defect},
                {"lhs", r.lhs},           {"rhs", r.rhs},
                {"quadrature_err", r.quadrature_err}, {"rho_route_difference", r.rho_route_difference},
                {"resonance_distance", r.resonance_distance}};
    if (opt.symbolic_degree > 0) {
      row["symbolic_degree"] = opt.symbolic_degree;
      row["symbolic_difference"] = r.symbolic_difference;
      row["symbolic_defect"] = r.symbolic_defect;
    }
    rows.push_back(row);
  }
  c.part("projection", worst, 1e-4);

  double worst1 = 0, worst2 = 0;
  json limits = json::array();
  auto alpha = sample_generic_alpha(4, rng);
  for (int m = 3; m <= 4; ++m) {
    ExponentAssignment a = exponents_from_list(m, std::vector<double>(alpha.begin(), alpha.begin() + symbol_count(m)));
    for (const auto& I : all_index_tuples(m, 2)) {
      if (I.at(3) != 2) continue;
      auto r = alpha_limit_check(I, a);
      (r.which_case == 1 ? worst1 : worst2) = std::max(r.which_case == 1 ? worst1 : worst2, r.deviation);
      limits.push_back({{"tuple", I.str()},
                        {"case", r.which_case},
                        {"values", r.values},
                        {"extrapolated", r.extrapolated},
                        {"target", r.target},
                        {"quadrature_err", r.quadrature_err}});
    }
  }
  c.part("alpha-limit-case2", worst2, 1e-4);
  c.part("alpha-limit-case1", worst1, 1e-4);
  c.rep.inputs = {{"n", n}, {"samples", samples}, {"seed", c.cfg.seed}, {"deltas", {0.04, 0.02, 0.01, 0.005}}};
  c.rep.details = {{"projection", rows}, {"alpha_limits", limits}};
  if (c.full() && n == 4) {
    auto lad = ladder_limit_check(4, rows[0]["alpha"].get<std::vector<double>>());
    c.rep.details["ladder_limit_deviation"] = lad.deviation;
    c.rep.details["ladder_limit_err_estimate"] = lad.err_estimate;
  }
}

struct Entry {
  CheckInfo info;
  std::function<void(Ctx&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{"beta-identity", "Beta integral for n = 3",
        "S at n = 3 against Gamma(1+a)Gamma(1+b)/Gamma(1+a+b)"},
       check_beta},
      {{"taylor-mzv", "Taylor coefficients of the Beta integral",
        "coefficients c0..c4 of t -> S(ta, tb) against the zeta exponential"},
       check_taylor},
      {{"mzv-engine", "multiple zeta values",
        "zeta(2), zeta(1,2) = zeta(3), double shuffle up to weight 4 per factor"},
       check_mzv},
      {{"pure-braid", "induced families satisfy the pure braid relations",
        "exact relation defects on every tower level"},
       check_pure_braid},
      {{"spectrum", "eigenvalues of A_S", "formula multiset against numeric eigenvalues, full and reduced"},
       check_spectrum},
      {{"eta-gamma", "transport vector against the wedge-chain forms",
        "exact defect for every index tuple; product formula on trees"},
       check_eta_gamma},
      {{"residue", "residues of wedge-chain forms",
        "residue expansion at random rational points; wedge chain equals principal product"},
       check_residue},
      {{"sum-relation", "sum over i_p of wedge-chain integrals vanishes", "all p-components at n = 4"},
       check_sum_relation},
      {{"associator", "associator coefficients",
        "degree one, zeta(2), group-like, symbolic against numeric up to weight 4"},
       check_associator},
      {{"projection", "projection identity and the exponent limit",
        "p(V2) = p(rho(Phi) V1) at n = 4, limits a_2i -> 0"},
       check_projection},
  };
  return e;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> r = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return r;
}

bool is_known_check(const std::string& id) {
  for (const auto& e : entries())
    if (e.info.id == id) return true;
  return false;
}

VerificationReport run_check(const std::string& id, const CheckConfig& cfg) {
  const Entry* entry = nullptr;
  for (const auto& e : entries())
    if (e.info.id == id) entry = &e;
  if (!entry) throw std::invalid_argument("unknown check id: " + id);
  if (cfg.tol && !(*cfg.tol >= 0)) throw std::invalid_argument("tolerance override must be nonnegative");
  if (cfg.n < 0) throw std::invalid_argument("n must be positive");

  VerificationReport rep;
  rep.check_id = id;
  rep.anchor = entry->info.anchor;
  Ctx ctx{cfg, rep};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    entry->run(ctx);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (cfg.tol) rep.inputs["tolerance_override"] = *cfg.tol;
  rep.inputs["profile"] = cfg.profile == Profile::Full ? "full" : "quick";

  rep.pass = rep.error.empty() && !rep.parts.empty();
  double ratio = -1;
  for (const auto& p : rep.parts) {
    rep.pass = rep.pass && p.pass;
    const double r = p.tolerance > 0 ? p.defect / p.tolerance : (p.defect > 0 ? INFINITY : 0);
    if (r > ratio) {
      ratio = r;
      rep.defect = p.defect;
      rep.tolerance = p.tolerance;
    }
  }
  if (!rep.error.empty()) {
    rep.defect = INFINITY;
    rep.pass = false;
  }
  return rep;
}

SuiteResult run_suite(const CheckConfig& cfg) {
  SuiteResult s;
  const auto& reg = check_registry();
  s.reports = parallel_map<VerificationReport>(reg.size(), [&](std::size_t i) { return run_check(reg[i].id, cfg); });
  for (const auto& r : s.reports) s.all_pass = s.all_pass && r.pass;
  return s;
}

json reports_to_json(const std::vector<VerificationReport>& reports, bool with_timing) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(r.to_json(with_timing));
  return arr;
}

std::string validate_report_json(const json& j) {
  if (!j.is_array()) return "top level must be an array";
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& r = j[i];
    const std::string at = "report " + std::to_string(i) + ": ";
    if (!r.is_object()) return at + "not an object";
    for (const char* key : {"schema_version", "check_id", "anchor", "inputs", "defect", "tolerance", "pass", "parts"})
      if (!r.contains(key)) return at + "missing key " + key;
    if (r["schema_version"] != report_schema_version) return at + "schema version mismatch";
    if (!r["check_id"].is_string() || !is_known_check(r["check_id"].get<std::string>())) return at + "unknown check id";
    if (!r["pass"].is_boolean() || !r["parts"].is_array()) return at + "bad types";
    bool all = !r["parts"].empty() && !r.contains("error");
    for (const auto& p : r["parts"]) {
      if (!p.contains("defect") || !p.contains("tolerance") || !p.contains("pass")) return at + "malformed part";
      const bool ok = p["defect"].is_number() && p["defect"].get<double>() <= p["tolerance"].get<double>();
      if (ok != p["pass"].get<bool>()) return at + "part pass flag inconsistent with defect";
      all = all && ok;
    }
    if (all != r["pass"].get<bool>()) return at + "pass flag inconsistent with parts";
  }
  return {};
}

}  // namespace smz
