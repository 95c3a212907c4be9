#include "holoweyl/char_variety.hpp"
#include "holoweyl/errors.hpp"
#include "holoweyl/fb_operators.hpp"
#include "holoweyl/groebner.hpp"
#include "holoweyl/io.hpp"
#include "holoweyl/pfaffian.hpp"
#include "holoweyl/quadrature.hpp"
#include "holoweyl/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

using namespace holoweyl;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kResource = 3 };

struct Common {
  std::string format;
  std::size_t max_terms = kDefaultTermLimit;
  std::size_t max_basis = Budget{}.max_basis;
  double timeout = 600;

  bool json_for(bool default_json) const { return format.empty() ? default_json : format == "json"; }
  Budget budget() const {
    Budget b;
    b.max_terms = max_terms;
    b.max_basis = max_basis;
    b.wall_clock = std::chrono::milliseconds(std::int64_t(timeout * 1000));
    return b;
  }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

// An ideal is a JSON file or FAMILY:N, e.g. annMU:1.
OperatorList load_ideal(const std::string& spec) {
  if (std::filesystem::exists(spec)) return operator_list_from_json(read_json_file(spec));
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("ideal '" + spec + "' is neither a file nor FAMILY:N");
  const int n = std::stoi(spec.substr(colon + 1));
  OperatorFamily fam = make_family(parse_family(spec.substr(0, colon)), n);
  return {fam.table, fam.labels, fam.operators};
}

OperatorList resolve_ideal(const std::string& ideal, const std::string& family, int n) {
  if (!ideal.empty()) return load_ideal(ideal);
  if (family.empty()) throw std::invalid_argument("give --ideal or --family with --n");
  OperatorFamily fam = make_family(parse_family(family), n);
  return {fam.table, fam.labels, fam.operators};
}

TermOrder resolve_order(const std::string& order, const VarTable& table) {
  if (!order.empty() && order.front() == '{') return TermOrder::from_json(json::parse(order), table);
  if (std::filesystem::exists(order)) return TermOrder::from_json(read_json_file(order), table);
  return TermOrder::preset(order, table);
}

void print(const json& j, bool lines = false) { std::cout << (lines ? j.dump() : j.dump(2)) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl algebra Groebner bases and Fisher-Bingham annihilators"};
  app.set_version_flag("--version", std::string(kGrammarVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--format", common.format, "text or json (verify defaults to json, the rest to text)")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-terms", common.max_terms, "term limit per intermediate operator")->capture_default_str();
  app.add_option("--max-basis", common.max_basis, "basis size limit")->capture_default_str();
  app.add_option("--timeout", common.timeout, "wall-clock budget per computation, seconds")->capture_default_str();
  std::string out_path;
  app.add_option("--out", out_path, "write the result to this file instead of stdout");

  std::function<int()> action;

  // gen
  std::string family, label;
  int n = 1;
  auto* gen = app.add_subcommand("gen", "print an operator family");
  gen->add_option("--family", family, "annFB, annMU, genJ0 or genJ")->required();
  gen->add_option("--n", n, "sphere dimension")->required();
  gen->add_option("--label", label, "print only this operator, e.g. rot(1,2)");
  gen->callback([&] {
    action = [&] {
      OperatorFamily fam = make_family(parse_family(family), n);
      if (!label.empty()) {
        WeylPolynomial op = fam.at(label);
        fam.labels = {label};
        fam.operators = {op};
      }
      if (common.json_for(false)) {
        print(to_json(fam));
      } else {
        for (std::size_t i = 0; i < fam.size(); ++i) std::cout << fam.labels[i] << ": " << to_text(fam.operators[i]) << '\n';
      }
      return kOk;
    };
  });

  // gb
  std::string ideal, order = "grevlex";
  bool cofactors = false;
  auto add_ideal = [&](CLI::App* sub) {
    sub->add_option("--ideal,--in", ideal, "JSON operator file or FAMILY:N");
    sub->add_option("--family", family, "operator family");
    sub->add_option("--n", n, "sphere dimension")->capture_default_str();
  };
  auto* gb = app.add_subcommand("gb", "left Groebner basis");
  add_ideal(gb);
  gb->add_option("--order", order, "preset name, JSON descriptor or file")->capture_default_str();
  gb->add_flag("--cofactors", cofactors, "express every basis element in the generators");
  gb->callback([&] {
    action = [&] {
      OperatorList list = resolve_ideal(ideal, family, n);
      GroebnerOptions o;
      o.budget = common.budget();
      o.track_cofactors = cofactors;
      o.source = ideal.empty() ? family + ":" + std::to_string(n) : ideal;
      GroebnerBasis g = buchberger(list.operators, resolve_order(order, list.table), o);
      if (common.json_for(false)) {
        json j = to_json(g);
        if (g.has_cofactors()) {
          json rows = json::array();
          for (const auto& row : g.cofactors()) {
            json r = json::array();
            for (const auto& c : row) r.push_back(to_text(c));
            rows.push_back(r);
          }
          j["cofactors"] = rows;
        }
        print(j);
      } else {
        std::cout << "# " << g.size() << " elements, order " << g.order().name() << '\n';
        for (std::size_t i = 0; i < g.size(); ++i) std::cout << "g" << i + 1 << ": " << to_text(g.generators()[i]) << '\n';
      }
      return kOk;
    };
  });

  // reduce
  std::string op;
  bool divide = false;
  auto* reduce = app.add_subcommand("reduce", "normal form of an operator");
  add_ideal(reduce);
  reduce->add_option("--op", op, "operator text")->required();
  reduce->add_option("--order", order, "term order")->capture_default_str();
  reduce->add_flag("--divide", divide, "divide by the generators as given instead of a Groebner basis");
  reduce->callback([&] {
    action = [&] {
      OperatorList list = resolve_ideal(ideal, family, n);
      const TermOrder ord = resolve_order(order, list.table);
      WeylPolynomial p = parse_operator(op, list.table);
      WeylPolynomial rem(list.table);
      if (divide) {
        rem = left_reduce(p, list.operators, ord, common.budget()).remainder;
      } else {
        GroebnerOptions o;
        o.budget = common.budget();
        rem = buchberger(list.operators, ord, o).normal_form(p, common.budget());
      }
      if (common.json_for(false))
        print({{"remainder", to_text(rem)}, {"zero", rem.is_zero()}, {"order", ord.to_json(list.table)}});
      else
        std::cout << to_text(rem) << '\n';
      return kOk;
    };
  });

  // member
  bool certificate = false;
  auto* member = app.add_subcommand("member", "ideal membership (exit 0 member, 1 not)");
  add_ideal(member);
  member->add_option("--op", op, "operator text")->required();
  member->add_option("--order", order, "term order")->capture_default_str();
  member->add_flag("--certificate", certificate, "print cofactors in the generators");
  member->callback([&] {
    action = [&] {
      OperatorList list = resolve_ideal(ideal, family, n);
      GroebnerOptions o;
      o.budget = common.budget();
      o.track_cofactors = certificate;
      Membership m = ideal_membership(parse_operator(op, list.table), list.operators,
                                      resolve_order(order, list.table), o);
      if (common.json_for(false)) {
        json j = {{"member", m.member}, {"remainder", to_text(m.remainder)}};
        if (certificate && m.member) {
          json c = json::object();
          for (std::size_t i = 0; i < list.labels.size(); ++i)
            if (!m.certificate[i].is_zero()) c[list.labels[i]] = to_text(m.certificate[i]);
          j["certificate"] = c;
        }
        print(j);
      } else {
        std::cout << (m.member ? "member" : "not a member") << '\n';
        if (!m.member) std::cout << "remainder: " << to_text(m.remainder) << '\n';
        if (certificate && m.member)
          for (std::size_t i = 0; i < list.labels.size(); ++i)
            if (!m.certificate[i].is_zero()) std::cout << list.labels[i] << ": " << to_text(m.certificate[i]) << '\n';
      }
      return m.member ? kOk : kFalse;
    };
  });

  // holonomic
  auto* holonomic = app.add_subcommand("holonomic", "holonomicity test (exit 0 holonomic, 1 not)");
  add_ideal(holonomic);
  holonomic->callback([&] {
    action = [&] {
      OperatorList list = resolve_ideal(ideal, family, n);
      HolonomicReport h = is_holonomic(list.operators, common.budget());
      if (common.json_for(false))
        print({{"holonomic", h.holonomic},
               {"dimension", h.dimension},
               {"variables", h.variables},
               {"ambient", h.ambient},
               {"basis_size", h.basis_size}});
      else
        std::cout << (h.holonomic ? "holonomic" : "not holonomic") << ": dimension " << h.dimension << " of "
                  << h.ambient << ", " << h.variables << " base variables\n";
      return h.holonomic ? kOk : kFalse;
    };
  });

  // dim
  std::string dim_order;
  auto* dim = app.add_subcommand("dim", "Krull dimension of a polynomial ideal or of a characteristic ideal");
  add_ideal(dim);
  dim->add_option("--order", dim_order, "order for a polynomial ideal: lex, grlex or grevlex");
  dim->callback([&] {
    action = [&] {
      int d = 0;
      std::string what;
      if (!ideal.empty() && std::filesystem::exists(ideal) && read_json_file(ideal).contains("variables")) {
        CommutativeIdeal ci = comm_ideal_from_json(read_json_file(ideal));
        if (dim_order.empty())
          d = krull_dimension(ci.polynomials, ci.ring, common.budget());
        else
          d = krull_dimension(ci.polynomials, TermOrder::for_ring(parse_order_kind(dim_order), ci.ring->size()),
                              common.budget());
        what = "polynomial ideal";
      } else {
        OperatorList list = resolve_ideal(ideal, family, n);
        auto ch = char_ideal(list.operators, common.budget());
        d = krull_dimension(ch, symbol_ring(list.table), common.budget());
        what = "characteristic ideal";
      }
      if (common.json_for(false))
        print({{"dimension", d}, {"ideal", what}});
      else
        std::cout << d << '\n';
      return kOk;
    };
  });

  // verify
  std::string suite = "symbolic";
  SuiteOptions so;
  auto* verify = app.add_subcommand("verify", "run a verification suite (JSON lines)");
  verify->add_option("--suite", suite, "symbolic, numeric, pfaffian or all")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify->add_option("--n", so.n, "sphere dimension")->capture_default_str();
  verify->add_option("--points", so.points, "random parameter points")->capture_default_str();
  verify->add_option("--seed", so.seed, "seed of the parameter points")->capture_default_str();
  verify->add_option("--tol", so.tol, "relative tolerance of numeric annihilation")->capture_default_str();
  verify->add_option("--jobs", so.jobs, "parallel checks")->capture_default_str();
  verify->add_flag("--certificates", so.certificates, "back J = K by re-expanded cofactors");
  verify->callback([&] {
    action = [&] {
      so.budget = common.budget();
      auto reports = run_suite(suite, so);
      bool fail = false, resource = false;
      for (const auto& r : reports) {
        fail = fail || r.status == "fail" || r.status == "error";
        resource = resource || r.status == "resource";
      }
      if (common.json_for(true)) {
        for (const auto& r : reports) print(to_json(r), true);
      } else {
        for (const auto& r : reports)
          std::printf("%-8s %-28s %-10.3g %s\n", r.status.c_str(), r.check.c_str(), r.residual,
                      r.parameters.dump().c_str());
      }
      return fail ? kFalse : resource ? kResource : kOk;
    };
  });

  // fb-eval
  std::vector<double> x, y, from, to, moment_a;
  double r = 1;
  std::string method = "quadrature";
  int steps = 64;
  double tol = 1e-12;
  auto* fb_eval = app.add_subcommand("fb-eval", "evaluate F(x, y, r)");
  fb_eval->add_option("--n", n, "sphere dimension")->capture_default_str();
  fb_eval->add_option("--x", x, "upper triangle of x, row-major")->delimiter(',');
  fb_eval->add_option("--y", y, "y")->delimiter(',');
  fb_eval->add_option("--r", r, "radius")->capture_default_str();
  fb_eval->add_option("--method", method, "quadrature or pfaffian")
      ->check(CLI::IsMember({"quadrature", "pfaffian"}))
      ->capture_default_str();
  fb_eval->add_option("--from", from, "start point x11,x12,x22,y1,y2,r (pfaffian, n = 1)")->delimiter(',');
  fb_eval->add_option("--to", to, "end point (pfaffian, n = 1)")->delimiter(',');
  fb_eval->add_option("--steps", steps, "initial RK4 steps")->capture_default_str();
  fb_eval->add_option("--tol", tol, "relative tolerance")->capture_default_str();
  fb_eval->add_option("--moment", moment_a, "t exponents: integrate t^a exp(g) instead")->delimiter(',');
  fb_eval->callback([&] {
    action = [&] {
      const bool as_json = common.json_for(false);
      if (method == "quadrature") {
        const VarTable tab(n, Ring::Param);
        if (x.empty()) x.assign(tab.x_count(), 0.0);
        if (y.empty()) y.assign(tab.dim(), 0.0);
        if (x.size() != tab.x_count() || y.size() != tab.dim())
          throw std::invalid_argument("--x needs " + std::to_string(tab.x_count()) + " values and --y " +
                                      std::to_string(tab.dim()));
        FbPoint p = FbPoint::make(n, x, y, r);
        if (!moment_a.empty()) {
          std::vector<int> a(moment_a.begin(), moment_a.end());
          const double v = moment(a, p);
          if (as_json)
            print({{"moment", a}, {"value", v}, {"point", p.values}});
          else
            std::printf("%.17g\n", v);
          return kOk;
        }
        QuadratureResult q = quadrature_F(p, tol);
        if (as_json)
          print({{"F", q.value},
                  {"resolution", q.resolution},
                  {"converged", q.converged},
                  {"change", q.change},
                  {"point", p.values}});
        else
          std::printf("%.17g\n", q.value);
        return q.converged ? kOk : kFalse;
      }
      if (n != 1) throw std::invalid_argument("the Pfaffian method is implemented for n = 1");
      if (from.empty()) from = default_base_point();
      if (to.empty()) {
        if (x.size() != 3 || y.size() != 2) throw std::invalid_argument("give --to or --x, --y, --r");
        to = {x[0], x[1], x[2], y[0], y[1], r};
      }
      if (from.size() != 6 || to.size() != 6) throw std::invalid_argument("points need 6 values");
      RationalGB g = rational_gb(ann_fb(1).operators, "pfaffian-grevlex", common.budget());
      PfaffianSystem sys = pfaffian_matrices(g);
      auto base = base_vector(sys, FbPoint::make(1, std::span(from).subspan(0, 3), std::span(from).subspan(3, 2), from[5]));
      OdeResult res = ode_continue(sys, from, base, to, steps, tol < 1e-8 ? 1e-8 : tol);
      if (as_json)
        print({{"F", res.value[0]},
               {"vector", res.value},
               {"steps", res.steps},
               {"converged", res.converged},
               {"change", res.change},
               {"from", from},
               {"to", to}});
      else
        std::printf("%.17g\n", res.value[0]);
      return res.converged ? kOk : kFalse;
    };
  });

  // pfaffian
  bool rank_only = false;
  std::string pf_order = "pfaffian-grevlex";
  auto* pf = app.add_subcommand("pfaffian", "holonomic rank and Pfaffian system of annFB");
  pf->add_option("--n", n, "sphere dimension (1; larger n only within the budget)")->capture_default_str();
  pf->add_flag("--rank", rank_only, "print the holonomic rank only");
  pf->add_option("--order", pf_order, "pfaffian-grevlex or pfaffian-lex")
      ->check(CLI::IsMember({"pfaffian-grevlex", "pfaffian-lex"}))
      ->capture_default_str();
  pf->callback([&] {
    action = [&] {
      OperatorFamily fb = ann_fb(n);
      RationalGB g = rational_gb(fb.operators, pf_order, common.budget());
      const bool as_json = common.json_for(false);
      if (rank_only) {
        json standard = json::array();
        for (const auto& s : g.standard) {
          WeylMonomial m(2 * fb.table.size(), 0);
          std::copy(s.begin(), s.end(), m.begin() + std::ptrdiff_t(fb.table.size()));
          standard.push_back(to_text(WeylPolynomial::monomial(fb.table, m)));
        }
        if (as_json)
          print({{"rank", g.standard.size()}, {"standard", standard}, {"order", pf_order}});
        else
          std::cout << g.standard.size() << '\n';
        return kOk;
      }
      PfaffianSystem sys = pfaffian_matrices(g);
      if (as_json) {
        print(to_json(sys));
      } else {
        std::cout << "rank " << sys.rank() << '\n';
        for (std::size_t i = 0; i < sys.rank(); ++i) std::cout << "  " << to_text(sys.basis_operator(i)) << '\n';
        for (std::size_t v = 0; v < sys.matrices.size(); ++v)
          for (std::size_t i = 0; i < sys.rank(); ++i)
            for (std::size_t j = 0; j < sys.rank(); ++j) {
              const auto& f = sys.matrices[v][i][j];
              if (f.is_zero()) continue;
              std::cout << fb.table.name(v) << "[" << i << "][" << j << "] = (" << to_text(f.num) << ") / ("
                        << to_text(f.den) << ")\n";
            }
      }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  std::ofstream out_file;
  std::streambuf* saved = std::cout.rdbuf();
  struct Restore {
    std::streambuf* buf;
    ~Restore() { std::cout.rdbuf(buf); }
  } restore{saved};
  if (!out_path.empty()) {
    out_file.open(out_path);
    if (!out_file) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kUsage;
    }
    if (common.format.empty() && out_path.ends_with(".json")) common.format = "json";
    std::cout.rdbuf(out_file.rdbuf());
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceExhausted& e) {
    std::cerr << "resource budget exceeded: " << e.what() << '\n';
    return kResource;
  } catch (const NotHolonomic& e) {
    std::cerr << "not holonomic: " << e.what() << '\n';
    return kFalse;
  } catch (const SingularLocus& e) {
    std::cerr << "singular locus: " << e.what() << '\n';
    return kFalse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFalse;
  }
}
