#include "sda/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace sda {

namespace {

Json header(const RunConfig& config, Json params) {
  return Json{{"version", kVersion}, {"subcommand", config.subcommand}, {"params", std::move(params)},
              {"tol", config.tol}};
}

int exit_for(Decision d) {
  switch (d) {
    case Decision::Yes:
      return kExitYes;
    case Decision::No:
      return kExitNo;
    case Decision::Unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

SdaOptions sda_options(const RunConfig& config) {
  SdaOptions o;
  o.tol = config.tol;
  o.numeric.tol = config.tol;
  o.numeric.max_iter = config.max_iter;
  return o;
}

// Symbolic orbitals for generator specs, materialized orbitals otherwise.
OrbitalStructure orbitals_for(const std::string& spec, bool symbolic) {
  if (symbolic) {
    auto fields = [&](std::size_t count) {
      std::vector<std::size_t> out;
      std::size_t pos = spec.find(':');
      while (pos != std::string::npos) {
        std::size_t next = spec.find(':', pos + 1);
        out.push_back(std::stoul(spec.substr(pos + 1, next - pos - 1)));
        pos = next;
      }
      if (out.size() != count) throw PreconditionError("malformed generator spec '" + spec + "'");
      return out;
    };
    if (spec.rfind("kneser:", 0) == 0) {
      auto v = fields(2);
      return symbolic_orbitals(SymbolicTag::kneser(v[0], v[1]));
    }
    if (spec.rfind("cycle:", 0) == 0) return symbolic_orbitals(SymbolicTag::cycle(fields(1)[0]));
    if (spec.rfind("clique:", 0) == 0) return symbolic_orbitals(SymbolicTag::clique(fields(1)[0]));
  }
  return orbitals(graph_from_spec(spec));
}

}  // namespace

CommandResult cmd_orbitals(const std::string& graph, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"graph", graph}, {"symbolic", config.symbolic}});
  OrbitalStructure o = orbitals_for(graph, config.symbolic);
  r.report["orbitals"] = to_json(o);
  r.report["generously_transitive"] = is_generously_transitive(o);
  return r;
}

CommandResult cmd_scheme_check(const std::string& graph, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"graph", graph}});
  OrbitalStructure o = orbitals(graph_from_spec(graph));
  AxiomReport axioms = verify_scheme_axioms(scheme_from_orbitals(o));
  r.report["orbital_count"] = o.count();
  r.report["generously_transitive"] = is_generously_transitive(o);
  r.report["axioms"] = to_json(axioms);
  r.exit_code = axioms.all() ? kExitYes : kExitNo;
  return r;
}

CommandResult cmd_chartable(const std::string& spec, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"scheme", spec}});
  CharacterTable table;
  if (spec.rfind("johnson:", 0) == 0 || spec.rfind("kneser:", 0) == 0) {
    std::string rest = spec.substr(spec.find(':') + 1);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw PreconditionError("expected johnson:s:t");
    table = johnson_character_table(std::stol(rest.substr(0, colon)), std::stol(rest.substr(colon + 1)));
  } else if (spec.rfind("cycle:", 0) == 0) {
    table = cycle_character_table(std::stol(spec.substr(6)));
  } else if (spec.rfind("clique:", 0) == 0) {
    table = clique_character_table(std::stol(spec.substr(7)));
  } else {
    table = character_table_for(orbitals(graph_from_spec(spec)), config.tol);
  }
  r.report["table"] = to_json(table);
  return r;
}

CommandResult cmd_sdp(const std::string& x, const std::string& a, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"x", x}, {"a", a}});
  SdpDecision d = sdp_decide(graph_from_spec(x), graph_from_spec(a), sda_options(config));
  r.report["decision"] = to_string(d.decision);
  r.report["path"] = d.path;
  r.report["route"] = d.route;
  Json witness = Json::object();
  if (d.v) witness["V"] = to_json(*d.v);
  if (config.include_matrices && d.m_exact) witness["M"] = to_json(*d.m_exact);
  if (config.include_matrices && d.m_numeric) witness["M"] = to_json(*d.m_numeric);
  r.report["witness"] = std::move(witness);
  if (d.residual) r.report["residual"] = *d.residual;
  r.report["note"] = d.note;
  r.exit_code = exit_for(d.decision);
  return r;
}

CommandResult cmd_aip(const std::string& x, const std::string& a, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"x", x}, {"a", a}});
  auto mu = aip_solve(graph_from_spec(x), graph_from_spec(a));
  r.report["decision"] = mu ? "YES" : "NO";
  r.report["path"] = "exact";
  if (mu) r.report["witness"] = to_json(*mu);
  r.exit_code = mu ? kExitYes : kExitNo;
  return r;
}

CommandResult cmd_sda(const std::string& x, const std::string& a, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"x", x}, {"a", a}});
  SdaResult d = sda_accepts(graph_from_spec(x), graph_from_spec(a), sda_options(config));
  r.report["decision"] = to_string(d.decision);
  r.report["path"] = d.path;
  r.report["route"] = d.route;
  Json witness = Json::object();
  if (d.witness) {
    const SdaWitness& w = *d.witness;
    if (w.v) witness["V"] = to_json(*w.v);
    if (w.mu) witness["aip"] = to_json(*w.mu);
    witness["refinement"] = w.refinement;
    if (config.include_matrices) {
      if (w.m_exact) witness["M"] = to_json(*w.m_exact);
      if (w.m_numeric) witness["M"] = to_json(*w.m_numeric);
      if (w.n) witness["N"] = to_json(*w.n);
    }
  }
  r.report["witness"] = std::move(witness);
  if (d.residual) r.report["residual"] = *d.residual;
  r.report["note"] = d.note;
  r.exit_code = exit_for(d.decision);
  return r;
}

CommandResult cmd_hom(const std::string& x, const std::string& a, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"x", x}, {"a", a}});
  auto f = find_homomorphism(graph_from_spec(x), graph_from_spec(a));
  r.report["decision"] = f ? "YES" : "NO";
  r.report["path"] = "exact";
  if (f) r.report["witness"] = to_json(*f);
  r.exit_code = f ? kExitYes : kExitNo;
  return r;
}

CommandResult cmd_fool(long n, long nprime, bool materialize, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"n", n}, {"nprime", nprime}, {"materialize", materialize}});
  FoolingParams params = fooling_params(n, nprime);
  FoolingCertificate cert = verify_fooling_orbital(params, config.tol);
  r.report["certificate"] = to_json(cert);
  bool ok = cert.all();
  if (materialize) {
    // The chosen parameters are usually far too large to materialize; fall back
    // to the smallest instance of the same construction.
    FoolingParams small = params;
    const Integer size = binomial(params.s, params.t) * params.n;
    if (size > kFoolingMaterializeGuard) small = fooling_params_explicit(n, 7, 3);
    FoolingWitness w = materialize_fooling_witness(small, config.tol);
    r.report["materialized"] = to_json(w, config.include_matrices);
    r.report["materialized"]["params"] = to_json(small);
    ok = ok && w.all();
  }
  r.exit_code = ok ? kExitYes : kExitNo;
  return r;
}

CommandResult cmd_clique_grid(long p_max, long n_max, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"p_max", p_max}, {"n_max", n_max}});
  Json grid = Json::array();
  bool matches = true;
  for (const auto& c : clique_experiment(p_max, n_max)) {
    grid.push_back(Json{{"p", c.p}, {"n", c.n}, {"decision", to_string(c.decision)}});
    matches = matches && ((c.decision == Decision::Yes) == (c.p <= c.n));
  }
  r.report["grid"] = std::move(grid);
  r.report["matches_p_le_n"] = matches;
  return r;
}

CommandResult cmd_slater(long p, long n, const RunConfig& config) {
  CommandResult r;
  r.report = header(config, Json{{"p", p}, {"n", n}});
  SlaterReport s = slater_point(p, n, config.tol);
  NonSlaterReport ns = non_slater_witness(p, n, 0, 1, 0, s.m, Rational(1), config.tol);
  r.report["slater_point"] = to_json(s);
  r.report["non_slater"] = to_json(ns);
  r.report["non_slater"]["x"] = 0;
  r.report["non_slater"]["y"] = 1;
  r.report["non_slater"]["a"] = 0;
  r.report["non_slater"]["radius"] = "1";
  if (config.include_matrices) r.report["slater_point"]["M"] = to_json(s.m);
  r.exit_code = s.all() && ns.all() ? kExitYes : kExitNo;
  return r;
}

CommandResult dispatch(const RunConfig& c) {
  const auto& g = c.graphs;
  auto need = [&](std::size_t k) {
    if (g.size() != k)
      throw PreconditionError(c.subcommand + " expects " + std::to_string(k) + " graph argument(s)");
  };
  if (c.subcommand == "orbitals") return need(1), cmd_orbitals(g[0], c);
  if (c.subcommand == "scheme-check") return need(1), cmd_scheme_check(g[0], c);
  if (c.subcommand == "chartable") return need(1), cmd_chartable(g[0], c);
  if (c.subcommand == "sdp") return need(2), cmd_sdp(g[0], g[1], c);
  if (c.subcommand == "aip") return need(2), cmd_aip(g[0], g[1], c);
  if (c.subcommand == "sda") return need(2), cmd_sda(g[0], g[1], c);
  if (c.subcommand == "hom") return need(2), cmd_hom(g[0], g[1], c);
  if (c.subcommand == "fool") return cmd_fool(c.n, c.nprime, c.materialize, c);
  if (c.subcommand == "clique-grid") return cmd_clique_grid(c.p_max, c.n_max, c);
  if (c.subcommand == "slater") return cmd_slater(c.p, c.n, c);
  throw PreconditionError("unknown subcommand '" + c.subcommand + "'");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Relaxation matrices, association schemes and SDA certificates"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  RunConfig config;
  app.add_option("--tol", config.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", config.out, "write the JSON report to this file");
  app.add_flag("--matrices", config.include_matrices, "include full matrices in reports");
  app.set_version_flag("--version", kVersion);

  auto graphs = [&](CLI::App* sub, std::size_t count) {
    sub->add_option("graphs", config.graphs, "graph specs or edge-list files")->expected(static_cast<int>(count))->required();
  };
  auto* orb = app.add_subcommand("orbitals", "orbitals of a digraph");
  graphs(orb, 1);
  orb->add_flag("--symbolic", config.symbolic, "closed-form orbitals for generator specs");
  graphs(app.add_subcommand("scheme-check", "verify the association-scheme axioms"), 1);
  graphs(app.add_subcommand("chartable", "character table (johnson:s:t, cycle:n, clique:n or a graph)"), 1);
  auto* sdp = app.add_subcommand("sdp", "decide the SDP relaxation");
  graphs(sdp, 2);
  sdp->add_option("--max-iter", config.max_iter, "numeric SDP iteration cap");
  graphs(app.add_subcommand("aip", "decide the affine integer relaxation"), 2);
  auto* sda = app.add_subcommand("sda", "decide SDA with a combined witness");
  graphs(sda, 2);
  sda->add_option("--max-iter", config.max_iter, "numeric SDP iteration cap");
  graphs(app.add_subcommand("hom", "search for a homomorphism"), 2);
  auto* fool = app.add_subcommand("fool", "Kneser versus odd-cycle certificate");
  fool->add_option("--n", config.n, "odd cycle length")->required();
  fool->add_option("--nprime", config.nprime, "clique bound")->required();
  fool->add_flag("--materialize", config.materialize, "also build the full witness of the smallest instance");
  auto* grid = app.add_subcommand("clique-grid", "exact clique decisions");
  grid->add_option("--pmax", config.p_max)->required();
  grid->add_option("--nmax", config.n_max)->required();
  auto* slater = app.add_subcommand("slater", "Slater point and non-Slater witness");
  slater->add_option("--p", config.p)->required();
  slater->add_option("--n", config.n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  config.subcommand = app.get_subcommands().front()->get_name();

  CommandResult result;
  try {
    result = dispatch(config);
  } catch (const Error& e) {
    Json err{{"version", kVersion}, {"subcommand", config.subcommand}, {"error", e.what()}};
    if (auto* g = dynamic_cast<const GuardError*>(&e)) err["guard"] = g->guard();
    if (auto* p = dynamic_cast<const ParseError*>(&e)) err["line"] = p->line();
    std::cerr << err.dump(2) << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << Json{{"error", std::string("invalid number: ") + e.what()}}.dump(2) << '\n';
    return kExitUsage;
  }
  const std::string text = result.report.dump(2) + "\n";
  if (config.out) {
    std::ofstream out(*config.out);
    if (!out) {
      std::cerr << "cannot write " << *config.out << '\n';
      return kExitUsage;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return result.exit_code;
}

}  // namespace sda
