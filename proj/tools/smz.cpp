#include "smz/braid.hpp"
#include "smz/graphs.hpp"
#include "smz/mzv.hpp"
#include "smz/selberg.hpp"
#include "smz/transport.hpp"
#include "smz/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace smz;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad number: " + item);
  }
  return out;
}

// "r:i_{r+1},...,i_n", e.g. "2:1,2,3"
IndexTuple parse_tuple(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("tuple spec must look like r:i,i,...");
  IndexTuple I;
  I.r = std::stoi(s.substr(0, colon));
  for (double v : parse_list(s.substr(colon + 1))) I.idx.push_back(static_cast<int>(v));
  I.validate();
  return I;
}

int cmd_mzv(const std::string& index, double abs_err, bool as_json) {
  MZVIndex k = parse_index(index);
  MZVValue v = mzv_eval(k, abs_err);
  if (as_json) {
    std::cout << json{{"index", k}, {"value", v.value}, {"abs_err", v.abs_err}, {"cutoff", v.cutoff}}.dump(2) << "\n";
  } else {
    std::cout << "zeta" << index_to_string(k) << " = " << std::setprecision(17) << v.value << "  +- "
              << std::setprecision(3) << v.abs_err << "\n";
  }
  return 0;
}

int cmd_graph_wedge(const std::string& spec, int vertex) {
  GraphSum out;
  if (spec.find('|') != std::string::npos) {
    if (vertex <= 0) throw std::invalid_argument("--vertex is required when wedging a graph");
    out = wedge(GraphSum(OrderedRootedGraph::parse(spec)), vertex);
  } else {
    out = wedge_chain(parse_tuple(spec));
  }
  std::cout << out.str() << "\n";
  return 0;
}

int cmd_tower(int n, int r, bool print) {
  Tower t = build_tower(n, r);
  for (const auto& fam : t.levels) {
    auto d = pure_braid_defects(fam);
    double worst = 0;
    for (const auto& x : d) worst = std::max(worst, x.norm);
    std::cout << "level " << fam.k << "  dim " << fam.dim << "  relation defect " << worst << "\n";
    if (print && fam.dim <= 12) {
      for (int j = 2; j <= n; ++j)
        for (int i = 1; i < j; ++i) {
          std::cout << "  A" << i << j << ":\n";
          const auto& m = fam.A(i, j);
          for (int a = 0; a < m.rows(); ++a) {
            std::cout << "   ";
            for (int b = 0; b < m.cols(); ++b) std::cout << " [" << m(a, b).str() << "]";
            std::cout << "\n";
          }
        }
    }
  }
  return 0;
}

int cmd_selberg(const std::string& file, const std::string& alphas, int r, double x3, double tol,
                const std::string& scheme) {
  GraphSum g = parse_graph_sum(read_file(file));
  if (g.empty()) throw std::invalid_argument("graph file holds no graphs");
  const int n = g.terms().begin()->first.n();
  SelbergOptions opt;
  opt.r = r;
  opt.x3 = x3;
  opt.tol = tol;
  if (scheme == "lattice")
    opt.scheme = Scheme::Lattice;
  else if (scheme != "tanh-sinh")
    throw std::invalid_argument("scheme must be tanh-sinh or lattice");
  auto a = exponents_from_list(n, parse_list(alphas));
  auto q = integrate_sum(g, a, opt);
  json j = {{"graph", g.str()}, {"alphas", a.a}, {"value", q.value}, {"err", q.err_estimate}, {"evals", q.evaluations}};
  if (!q.converged) j["converged"] = false;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_assoc(int degree, bool numeric) {
  HRElement h = associator_symbolic(degree);
  NCSeries<double> num = numeric ? associator_numeric(degree) : NCSeries<double>(degree);
  for (std::size_t i = 0; i < series_size(degree); ++i) {
    Word w = Word::from_index(i);
    MZVCombo c = h.coeff(w);
    if (c.is_zero() && !numeric) continue;
    std::cout << std::setw(degree + 2) << std::left << w.str() << " " << c.str();
    if (numeric) std::cout << "   [" << std::setprecision(12) << num[w] << "]";
    std::cout << "\n";
  }
  return 0;
}

void print_report(const VerificationReport& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << std::setw(14) << std::left << r.check_id << " defect "
            << std::setprecision(3) << r.defect << " tol " << r.tolerance;
  if (!r.error.empty()) std::cout << "  error: " << r.error;
  std::cout << "\n";
  for (const auto& p : r.parts)
    std::cout << "    " << (p.pass ? "ok   " : "FAIL ") << p.name << " " << p.defect << " / " << p.tolerance << "\n";
}

int cmd_verify(const std::string& id, const CheckConfig& cfg, const std::string& json_path, bool timing) {
  std::vector<VerificationReport> reports;
  bool all = true;
  if (id == "all") {
    auto s = run_suite(cfg);
    reports = s.reports;
    all = s.all_pass;
  } else {
    reports.push_back(run_check(id, cfg));
    all = reports.back().pass;
  }
  for (const auto& r : reports) print_report(r);
  if (!json_path.empty()) {
    json j = reports_to_json(reports, timing);
    std::string problem = validate_report_json(j);
    if (!problem.empty()) throw std::logic_error("report failed schema validation: " + problem);
    std::ofstream out(json_path);
    out << j.dump(2) << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selberg integrals, pure-braid towers and multiple zeta values"};
  app.require_subcommand(1);

  auto* mzv = app.add_subcommand("mzv", "multiple zeta values");
  auto* mzv_eval_cmd = mzv->add_subcommand("eval", "evaluate zeta(k1,...,km)");
  std::string index;
  double abs_err = mzv_min_abs_err;
  bool mzv_json = false;
  mzv_eval_cmd->add_option("index", index, "index such as 2 or 1,2")->required();
  mzv_eval_cmd->add_option("--abs-err", abs_err, "requested absolute error");
  mzv_eval_cmd->add_flag("--json", mzv_json, "print JSON");
  mzv->require_subcommand(1);

  auto* graph = app.add_subcommand("graph", "ordered rooted graphs");
  auto* wedge_cmd = graph->add_subcommand("wedge", "wedge chain of r:i,i,... or one wedge of a graph");
  std::string spec;
  int vertex = 0;
  wedge_cmd->add_option("spec", spec, "tuple r:i_{r+1},...,i_n or graph 'n r | (p,q) ...'")->required();
  wedge_cmd->add_option("--vertex", vertex, "attach vertex n+1 at this vertex (graph input)");
  graph->require_subcommand(1);

  auto* tower = app.add_subcommand("tower", "pure-braid matrix tower");
  auto* build_cmd = tower->add_subcommand("build", "build the tower and check the relations");
  int tn = 4, tr = 2;
  bool tprint = false;
  build_cmd->add_option("--n", tn, "number of points")->required();
  build_cmd->add_option("--r", tr, "number of roots")->default_val(2);
  build_cmd->add_flag("--print", tprint, "print matrices of small levels");
  tower->require_subcommand(1);

  auto* selberg = app.add_subcommand("selberg", "Selberg-type integrals");
  auto* integ_cmd = selberg->add_subcommand("integrate", "integrate a graph sum from a file");
  std::string gfile, alphas, scheme = "tanh-sinh";
  int sr = 2;
  double sx3 = 0.5, stol = 0;
  integ_cmd->add_option("file", gfile, "graph file, lines '[coef] n r | (p,q) ...'")->required();
  integ_cmd->add_option("--alpha", alphas, "exponents a12,a13,a23,a14,... in pair order")->required();
  integ_cmd->add_option("--r", sr, "number of roots (2 or 3)");
  integ_cmd->add_option("--x3", sx3, "third root when r = 3");
  integ_cmd->add_option("--tol", stol, "quadrature tolerance (0: default per dimension)");
  integ_cmd->add_option("--scheme", scheme, "tanh-sinh or lattice");
  selberg->require_subcommand(1);

  auto* assoc = app.add_subcommand("assoc", "associator");
  auto* expand_cmd = assoc->add_subcommand("expand", "coefficients up to a degree");
  int degree = 4;
  bool anum = false;
  expand_cmd->add_option("--degree", degree, "truncation degree")->required();
  expand_cmd->add_flag("--numeric", anum, "also print the numeric coefficients");
  assoc->require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run verification checks");
  std::string check_id, json_path, profile = "quick";
  CheckConfig cfg;
  double tol_override = -1;
  bool timing = false;
  std::string ids = "check id or 'all':";
  for (const auto& c : check_registry()) ids += " " + c.id;
  verify->add_option("check", check_id, ids)->required();
  verify->add_option("--seed", cfg.seed, "64-bit seed for sampled inputs");
  verify->add_option("--tol", tol_override, "override every tolerance of the check");
  verify->add_option("--n", cfg.n, "problem size where the check has one");
  verify->add_option("--profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--json", json_path, "write the report array to this file");
  verify->add_flag("--timing", timing, "include runtimes in JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mzv_eval_cmd->parsed()) return cmd_mzv(index, abs_err, mzv_json);
    if (wedge_cmd->parsed()) return cmd_graph_wedge(spec, vertex);
    if (build_cmd->parsed()) return cmd_tower(tn, tr, tprint);
    if (integ_cmd->parsed()) return cmd_selberg(gfile, alphas, sr, sx3, stol, scheme);
    if (expand_cmd->parsed()) return cmd_assoc(degree, anum);
    if (verify->parsed()) {
      if (tol_override >= 0) cfg.tol = tol_override;
      cfg.profile = profile == "full" ? Profile::Full : Profile::Quick;
      if (check_id != "all" && !is_known_check(check_id)) {
        std::cerr << "unknown check id '" << check_id << "'\n";
        return 2;
      }
      return cmd_verify(check_id, cfg, json_path, timing);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
