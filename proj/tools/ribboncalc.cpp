// ribboncalc: command-line front end; every subcommand forwards to the library.
#include "acceptance_suite.hpp"
#include "ribbon/cluster.hpp"
#include "ribbon/comb.hpp"
#include "ribbon/degeneration.hpp"
#include "ribbon/enumerate.hpp"
#include "ribbon/error.hpp"
#include "ribbon/graph_json.hpp"
#include "ribbon/plforms.hpp"
#include "ribbon/stable.hpp"
#include "ribbon/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace ribbon;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

MarkedMetricGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
  return graph_from_json(j);
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

std::optional<std::pair<int, int>> gn_of(int g, int n) {
  if (g < 0 && n < 0) return std::nullopt;
  if (g < 0 || n < 0) throw CLI::ValidationError("--g and --n go together");
  return std::make_pair(g, n);
}

struct Global {
  bool as_json = false;
  int jobs = 1;
  int max_sides = -1;

  EnumOptions opts() const {
    EnumOptions o;
    o.jobs = jobs;
    o.max_sides = max_sides > 0 ? max_sides : default_max_sides();
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact ribbon-graph combinatorics of moduli of curves"};
  app.fallthrough();
  Global G;
  bool repro = false, manifest = false;
  app.add_flag("--json", G.as_json, "canonical JSON output");
  app.add_option("--jobs", G.jobs, "worker cap")->check(CLI::PositiveNumber);
  app.add_option("--max-sides", G.max_sides, "enumeration bound on sides (default RIBBONCALC_MAX_SIDES or 30)");
  app.add_flag("--repro", repro, "run the acceptance suite and print its table");
  app.add_flag("--manifest", manifest, "write a run manifest to stderr");

  std::ostringstream out;
  std::function<int()> action;

  // enumerate
  auto* en = app.add_subcommand("enumerate", "isomorphism classes of marked reduced graphs");
  int en_g = 0;
  std::string en_labels, en_profile, en_out = "jsonl";
  std::vector<std::string> en_marks;
  en->add_option("--genus", en_g)->required();
  en->add_option("--labels", en_labels, "hole labels, comma separated")->required();
  en->add_option("--profile", en_profile, "m0,m1,...")->required();
  en->add_option("--vertex-mark", en_marks, "q=valency (repeatable)");
  en->add_option("--out", en_out)->check(CLI::IsMember({"jsonl", "count"}));
  en->callback([&] {
    action = [&] {
      auto P = split_csv(en_labels);
      std::map<std::string, int> marks;
      for (const auto& m : en_marks) {
        auto eq = m.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--vertex-mark expects q=valency");
        std::string q = m.substr(0, eq);
        marks[q] = std::stoi(m.substr(eq + 1));
        if (std::find(P.begin(), P.end(), q) == P.end()) P.push_back(q);
      }
      auto cells = enumerate(en_g, P, Profile::parse(en_profile), marks, G.opts());
      if (en_out == "count") {
        out << cells.size() << "\n";
        return 0;
      }
      for (const auto& c : cells) {
        auto j = graph_to_json(c.graph);
        j["aut"] = c.aut;
        out << j.dump() << "\n";
      }
      return 0;
    };
  });

  // euler
  auto* eu = app.add_subcommand("euler", "orbifold Euler characteristic from the cell decomposition");
  int eu_g = 0, eu_n = 1;
  bool eu_unlabeled = false;
  eu->add_option("--genus", eu_g)->required();
  eu->add_option("--n", eu_n)->required();
  eu->add_flag("--unlabeled", eu_unlabeled, "sum over unlabeled classes instead");
  eu->callback([&] {
    action = [&] {
      Rational chi = eu_unlabeled ? orbifold_euler_unlabeled(eu_g, eu_n, G.opts()) : orbifold_euler(eu_g, eu_n, G.opts());
      if (G.as_json)
        out << json{{"genus", eu_g}, {"n", eu_n}, {"euler", to_string(chi)}}.dump() << "\n";
      else
        out << to_string(chi) << "\n";
      return 0;
    };
  });

  // fpoly
  auto* fp = app.add_subcommand("fpoly", "combinatorial class as a kappa polynomial");
  std::string fp_profile;
  int fp_g = -1, fp_n = -1;
  fp->add_option("--profile", fp_profile, "m0,m1,...")->required();
  fp->add_option("--g", fp_g);
  fp->add_option("--n", fp_n);
  fp->callback([&] {
    action = [&] {
      auto f = f_polynomial(Profile::parse(fp_profile), gn_of(fp_g, fp_n));
      out << (G.as_json ? f.to_json().dump() : f.str()) << "\n";
      return 0;
    };
  });

  // relation
  auto* re = app.add_subcommand("relation", "both sides of the partition relation");
  std::string re_rho, re_keep;
  int re_g = -1, re_n = -1;
  re->add_option("--rho", re_rho, "rho values of q1,q2,...")->required();
  re->add_option("--keep", re_keep, "labels whose psi classes are kept");
  re->add_option("--g", re_g);
  re->add_option("--n", re_n);
  re->callback([&] {
    action = [&] {
      auto r = corollary_relation(parse_rho(re_rho), split_csv(re_keep), gn_of(re_g, re_n));
      if (G.as_json) {
        out << json{{"lhs", r.lhs.to_json()}, {"rhs", r.rhs.to_json()}, {"boundary", r.boundary.to_json()}}.dump()
            << "\n";
      } else {
        out << r.str() << "\n";
        if (!r.boundary.is_zero()) out << "boundary: " << r.boundary.str() << "\n";
      }
      return 0;
    };
  });

  // check two-vertex
  auto* ch = app.add_subcommand("check", "verify a closed formula");
  ch->require_subcommand(1);
  auto* tv = ch->add_subcommand("two-vertex", "two non-trivalent vertices of valencies 2a+3, 2b+3");
  int tv_a = 1, tv_b = 1;
  tv->add_option("--a", tv_a)->required();
  tv->add_option("--b", tv_b)->required();
  tv->callback([&] {
    action = [&] {
      auto v = two_vertex_check(tv_a, tv_b);
      if (G.as_json) {
        out << json{{"computed", v.computed.to_json()}, {"expected", v.expected.to_json()}, {"ok", v.ok}}.dump()
            << "\n";
      } else {
        out << "computed: " << v.computed.str() << "\nexpected: " << v.expected.str() << "\nverdict: "
            << (v.ok ? "ok" : "MISMATCH") << "\n";
      }
      return v.ok ? 0 : 1;
    };
  });

  // cluster-count
  auto* cc = app.add_subcommand("cluster-count", "admissible clusters of a hole sequence");
  std::string cc_rho, cc_method = "all";
  cc->add_option("--rho", cc_rho, "rho values; the first may be -1")->required();
  cc->add_option("--method", cc_method)->check(CLI::IsMember({"brute", "recurrence", "closed", "all"}));
  cc->callback([&] {
    action = [&] {
      auto spec = AdmissibleClusterSpec::parse(cc_rho);
      auto opt = G.opts();
      auto brute = [&] { return count_admissible(spec, opt.max_sides, opt).count; };
      if (cc_method != "all") {
        Integer v = cc_method == "brute" ? brute() : cc_method == "recurrence" ? count_by_recurrence(spec) : count_closed(spec);
        if (G.as_json)
          out << json{{"method", cc_method}, {"count", to_string(v)}}.dump() << "\n";
        else
          out << to_string(v) << "\n";
        return 0;
      }
      Integer b = brute(), r = count_by_recurrence(spec), c = count_closed(spec);
      bool agree = b == r && r == c;
      if (G.as_json) {
        out << json{{"brute", to_string(b)}, {"recurrence", to_string(r)}, {"closed", to_string(c)}, {"agree", agree}}
                   .dump()
            << "\n";
      } else {
        out << "brute: " << to_string(b) << "\nrecurrence: " << to_string(r) << "\nclosed: " << to_string(c) << "\n";
        if (agree)
          out << "3-way agreement: " << to_string(c) << "\n";
        else
          out << "disagreement\n";
      }
      return agree ? 0 : 1;
    };
  });

  // fiber
  auto* fi = app.add_subcommand("fiber", "fiber integral of the top power of the hole form");
  std::string fi_kind = "disk", fi_eps = "1";
  int fi_r = 0, fi_v1 = 1, fi_v2 = 1;
  fi->add_option("--kind", fi_kind)->check(CLI::IsMember({"disk", "cyl"}));
  fi->add_option("--r", fi_r);
  fi->add_option("--v1", fi_v1);
  fi->add_option("--v2", fi_v2);
  fi->add_option("--eps", fi_eps, "perimeter half-length, p/q");
  fi->callback([&] {
    action = [&] {
      Rational eps = parse_rational(fi_eps);
      if (fi_kind == "disk") {
        Rational v = fiber_integral_disk(fi_r, eps);
        if (G.as_json)
          out << json{{"kind", "disk"}, {"r", fi_r}, {"eps", to_string(eps)}, {"integral", to_string(v)}}.dump() << "\n";
        else
          out << to_string(v) << "\n";
        return 0;
      }
      auto c = fiber_integral_cyl(fi_v1, fi_v2, eps);
      if (G.as_json) {
        json per = json::array();
        for (const auto& x : c.per_simplex) per.push_back(to_string(x));
        out << json{{"kind", "cyl"},         {"v1", fi_v1},         {"v2", fi_v2},
                    {"eps", to_string(eps)}, {"integral", to_string(c.integral)},
                    {"simplices", c.simplices}, {"raw_configurations", c.raw_configurations}, {"per_simplex", per}}
                   .dump()
            << "\n";
      } else {
        out << to_string(c.integral) << "\nsimplices: " << c.simplices << " (of " << c.raw_configurations
            << " attachments)\n";
      }
      return 0;
    };
  });

  // omega
  auto* om = app.add_subcommand("omega", "the hole 2-form on a cell");
  std::string om_graph, om_hole;
  bool om_pf = false;
  om->add_option("--graph", om_graph, "graph JSON file")->required();
  om->add_option("--hole", om_hole);
  om->add_flag("--pfaffian", om_pf, "Pfaffian of the total form on the fixed-perimeter slice");
  om->callback([&] {
    action = [&] {
      auto g = read_graph(om_graph);
      json j;
      if (!om_hole.empty()) {
        auto f = omega_on_cell(g, om_hole);
        json terms = json::object();
        for (int u = 0; u < f.dim(); ++u)
          for (int v = u + 1; v < f.dim(); ++v)
            if (f.A(u, v) != 0) {
              std::string key = "e" + std::to_string(f.edges[u] + 1) + "^e" + std::to_string(f.edges[v] + 1);
              terms[key] = to_string(f.A(u, v));
              if (!G.as_json) out << key << ": " << to_string(f.A(u, v)) << "\n";
            }
        j["hole"] = om_hole;
        j["terms"] = terms;
      }
      if (om_pf) {
        auto r = nondegeneracy_check(g);
        j["slice_dim"] = r.slice_dim;
        j["pfaffian"] = to_string(r.pfaffian);
        j["nondegenerate"] = r.nondegenerate;
        if (!G.as_json)
          out << "slice dimension: " << r.slice_dim << "\npfaffian: " << to_string(r.pfaffian)
              << "\nnondegenerate: " << (r.nondegenerate ? "yes" : "no") << "\n";
      }
      if (om_hole.empty() && !om_pf) throw CLI::ValidationError("omega needs --hole or --pfaffian");
      if (G.as_json) out << j.dump() << "\n";
      return 0;
    };
  });

  // shrink
  auto* sh = app.add_subcommand("shrink", "shrink one hole to length zero");
  std::string sh_graph, sh_hole;
  sh->add_option("--graph", sh_graph, "graph JSON file")->required();
  sh->add_option("--hole", sh_hole)->required();
  sh->callback([&] {
    action = [&] {
      auto r = shrink(read_graph(sh_graph), sh_hole);
      json comps = json::array();
      for (const auto& c : r.components) comps.push_back(graph_to_json(c));
      if (G.as_json) {
        out << json{{"topology", r.topology.str()}, {"nodes", r.nodes},          {"components", comps},
                    {"dual", r.dual.str()},         {"reduced", r.reduced.str()}}
                   .dump()
            << "\n";
      } else {
        out << "topology: " << r.topology.str() << "\nnodes:";
        for (const auto& [l, v] : r.nodes) out << " " << l << "=" << v;
        out << "\ndual: " << r.dual.str() << "\nreduced: " << r.reduced.str() << "\n";
        for (const auto& c : comps) out << c.dump() << "\n";
      }
      return 0;
    };
  });

  // strata
  auto* st = app.add_subcommand("strata", "census of hole topologies over all cells");
  int st_g = 0;
  std::string st_labels, st_hole;
  st->add_option("--genus", st_g)->required();
  st->add_option("--labels", st_labels)->required();
  st->add_option("--hole", st_hole)->required();
  st->callback([&] {
    action = [&] {
      auto P = split_csv(st_labels);
      std::map<std::string, long> census;
      for (const char* k : {"disk", "cylinder", "surface", "closed"}) census[k] = 0;
      long total = 0;
      for (const auto& fam : enumerate_all_cells(st_g, P, std::nullopt, G.opts()))
        for (const auto& c : fam.cells) {
          ++census[kind_name(hole_topology(c.graph, st_hole).kind)];
          ++total;
        }
      if (G.as_json) {
        out << json{{"census", census}, {"total", total}}.dump() << "\n";
      } else {
        for (const char* k : {"disk", "cylinder", "surface", "closed"}) out << k << " " << census[k] << "\n";
        out << "total " << total << "\n";
      }
      return 0;
    };
  });

  // stable
  auto* sb = app.add_subcommand("stable", "stable graph of a permissible sequence");
  std::string sb_graph, sb_zseq;
  sb->add_option("--graph", sb_graph, "graph JSON file")->required();
  sb->add_option("--zseq", sb_zseq, "JSON list of edge lists, 1-based sides")->required();
  sb->callback([&] {
    action = [&] {
      auto g = read_graph(sb_graph);
      json zj;
      try {
        zj = json::parse(sb_zseq);
      } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("--zseq: ") + e.what());
      }
      std::vector<std::vector<int>> Z;
      try {
        for (const auto& step : zj) {
          Z.emplace_back();
          for (const auto& s : step) Z.back().push_back(s.get<int>() - 1);
        }
      } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("--zseq: ") + e.what());
      }
      out << stable_to_json(build_stable(g, Z)).dump(G.as_json ? -1 : 2) << "\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  int code = 0;
  try {
    if (repro) {
      code = acceptance::run_all(out) ? 1 : 0;
    } else if (action) {
      code = action();
    } else {
      std::cerr << app.help();
      return kExitUsage;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << json{{"error", kind_name(e.kind())}, {"message", e.what()}}.dump() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }

  const std::string text = out.str();
  std::cout << text << std::flush;
  if (manifest) {
    std::vector<std::string> params(argv + 1, argv + argc);
    std::string command;
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();
    if (repro) command = "repro";
    std::cerr << json{{"command", command}, {"parameters", params}, {"version", kVersion}, {"digest", fnv1a(text)}}.dump()
              << "\n";
  }
  return code;
}
