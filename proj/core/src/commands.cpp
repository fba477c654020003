#include "g2cert/commands.hpp"

#include "g2cert/classifier.hpp"
#include "g2cert/g2_structure.hpp"
#include "g2cert/model_forms.hpp"
#include "g2cert/registry.hpp"
#include "g2cert/symmetries.hpp"
#include "g2cert/version.hpp"

#include <chrono>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace g2cert {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double form_inf(const KForm& a) {
  double m = 0.0;
  for (const auto& term : a.terms()) m = std::max(m, std::abs(term.second));
  return m;
}

std::string spectrum_string(const std::vector<std::complex<double>>& spec) {
  std::string s = "[";
  for (size_t i = 0; i < spec.size(); ++i) {
    if (i) s += ", ";
    s += format_double(spec[i].real());
    if (spec[i].imag() != 0.0) {
      s += spec[i].imag() >= 0 ? "+" : "-";
      s += format_double(std::abs(spec[i].imag()));
      s += "i";
    }
  }
  return s + "]";
}

std::string betti_string(const std::array<int, 6>& b) {
  std::string s = "[";
  for (int i = 0; i < 6; ++i) {
    if (i) s += ",";
    s += std::to_string(b[i]);
  }
  return s + "]";
}

void emit(const Report& rep, const CliOptions& opt, std::ostream& out) {
  if (opt.json)
    out << rep.to_json().dump(2) << '\n';
  else
    out << rep.to_text();
}

std::string row_anchor(const std::string& table, const std::string& name) {
  return table + ", row " + name;
}

/* ----- verify ----- */

struct VerifyContext {
  const CliOptions& opt;
  RegistryEntry entry;
  G2Structure structure;
  CurvatureData curvature;

  VerifyContext(const CliOptions& o, RegistryEntry e)
      : opt(o),
        entry(std::move(e)),
        structure(entry.algebra),
        curvature(ricci(entry.algebra, structure.metric())) {}
};

void check_jacobi(VerifyContext& c, Report& rep) {
  double r = c.entry.algebra.jacobi_residual();
  rep.add({"jacobi", c.entry.name, r, c.opt.tol, std::nullopt, r < c.opt.tol, true,
           row_anchor("Table 1", c.entry.name), ""});
}

void check_closed(VerifyContext& c, Report& rep) {
  double r = c.structure.closedness_residual();
  rep.add({"closed", c.entry.name, r, c.opt.tol, std::nullopt, r < c.opt.tol, true,
           "Theorem (main)", ""});
}

void check_torsion(VerifyContext& c, Report& rep) {
  double r = form_inf(c.structure.torsion() - tau_reference());
  r = std::max(r, c.structure.torsion_identity_residual());
  r = std::max(r, std::abs(c.structure.torsion_norm2() - 2.0));
  rep.add({"torsion", c.entry.name, r, c.opt.tol,
           std::string("tau=") + c.structure.torsion().to_string(), r < c.opt.tol, true,
           "Theorem (main)", ""});
}

void check_erp(VerifyContext& c, Report& rep) {
  double r = erp_residual(c.structure);
  rep.add({"erp", c.entry.name, r, c.opt.tol, std::nullopt, r < c.opt.tol, true, "Eq. (ERPeq)",
           ""});
}

void check_pinching(VerifyContext& c, Report& rep) {
  double gap = pinching_gap(c.curvature);
  double scal2 = c.curvature.scalar * c.curvature.scalar;
  double tol = c.opt.tol * scal2;
  rep.add({"pinching", c.entry.name, std::abs(gap), tol,
           std::string("scal=") + format_double(c.curvature.scalar), std::abs(gap) < tol, true,
           "Eq. (estB)", ""});
}

void check_betti(VerifyContext& c, Report& rep) {
  BettiResult br = c.entry.algebra.betti(c.opt.rank_tol);
  std::array<int, 6> computed{};
  for (int i = 0; i < 6; ++i) computed[i] = br.b[i + 1];
  bool equal = computed == c.entry.table.betti && br.stable;
  rep.add({"betti", c.entry.name, std::nullopt, std::nullopt,
           std::string("computed=") + betti_string(computed) +
               " declared=" + betti_string(c.entry.table.betti),
           equal, true, row_anchor("Table 2", c.entry.name),
           br.stable ? "" : "rank decision unstable"});
}

void check_nilradical(VerifyContext& c, Report& rep) {
  int dim = c.entry.algebra.nilradical(c.opt.rank_tol).dim();
  rep.add({"nilradical", c.entry.name, std::nullopt, std::nullopt,
           std::string("computed=") + std::to_string(dim) +
               " declared=" + std::to_string(c.entry.table.nilradical_dim),
           dim == c.entry.table.nilradical_dim, true, row_anchor("Table 2", c.entry.name), ""});
}

void check_nilpotency(VerifyContext& c, Report& rep) {
  Subspace nr = c.entry.algebra.nilradical(c.opt.rank_tol);
  LieAlgebra sub = c.entry.algebra.subalgebra(nr);
  std::optional<int> deg = sub.nilpotency_degree(c.opt.rank_tol);
  std::string computed = deg ? std::to_string(*deg) : "not nilpotent";
  rep.add({"nilpotency", c.entry.name, std::nullopt, std::nullopt,
           std::string("computed=") + computed +
               " declared=" + std::to_string(c.entry.table.nilpotency_degree),
           deg && *deg == c.entry.table.nilpotency_degree, true,
           row_anchor("Table 2", c.entry.name), ""});
}

void check_unimodular(VerifyContext& c, Report& rep) {
  double witness = 0.0;
  bool u = c.entry.algebra.unimodular(c.opt.tol, &witness);
  rep.add({"unimodular", c.entry.name, witness, std::nullopt,
           std::string("computed=") + (u ? "true" : "false") +
               " declared=" + (c.entry.unimodular ? "true" : "false"),
           u == c.entry.unimodular, true, "Section 1", "residual = max |tr ad|"});
}

void check_csolvable(VerifyContext& c, Report& rep) {
  bool all_zero = !c.entry.params.empty();
  for (const auto& [k, v] : c.entry.param_values) all_zero = all_zero && v == 0.0;
  bool expected = c.entry.completely_solvable || all_zero;
  bool computed = c.entry.algebra.is_completely_solvable(c.opt.tol);
  rep.add({"csolvable", c.entry.name, std::nullopt, std::nullopt,
           std::string("computed=") + (computed ? "true" : "false") +
               " expected=" + (expected ? "true" : "false"),
           computed == expected, true, "Section 1", ""});
}

void check_ricci_soliton(VerifyContext& c, Report& rep) {
  SolitonResult sr = ricci_soliton_solve(c.entry.algebra, c.structure.metric());
  bool pass = sr.success && sr.coefficient < 0.0;
  rep.add({"ricci_soliton", c.entry.name, sr.residual, 1e-8,
           std::string("c=") + format_double(sr.coefficient), pass, true, "Section 1",
           pass ? "expanding" : "not a solvsoliton certificate"});
}

void check_laplacian_soliton(VerifyContext& c, Report& rep) {
  SolitonResult sr = laplacian_soliton_solve(c.structure);
  bool pass = sr.success && std::abs(sr.coefficient) < 1e-8;
  rep.add({"laplacian_soliton", c.entry.name, sr.residual, 1e-8,
           std::string("lambda=") + format_double(sr.coefficient), pass, true, "Section 1",
           pass ? "steady" : "not steady"});
}

void check_exactness(VerifyContext& c, Report& rep) {
  if (c.entry.tr_a1_inv) {
    double r = exactness_residual(c.structure, *c.entry.tr_a1_inv);
    rep.add({"exactness", c.entry.name, r, c.opt.tol,
             std::string("coefficient=") + format_double(*c.entry.tr_a1_inv), r < c.opt.tol,
             true, "Section 1", "phi = d(3 tau - coefficient e^34)"});
    return;
  }
  NonExactness ne = non_exactness_certificate(c.structure);
  bool pass = ne.not_exact && ne.max_pairing < c.opt.tol &&
              std::abs(ne.phi_pairing - 1.0) < c.opt.tol;
  rep.add({"exactness", c.entry.name, ne.max_pairing, c.opt.tol,
           std::string("projection_gap=") + format_double(ne.projection_gap) +
               " phi_pairing=" + format_double(ne.phi_pairing),
           pass, true, "Section 1", "n/a: paper asserts non-exactness; certificate run instead"});
}

void check_su3(VerifyContext& c, Report& rep) {
  SU3Restriction sr = su3_restrict(c.structure, VectorXd::Unit(7, 6), c.opt.tol);
  double r = std::max(sr.r_omega2, sr.r_rho);
  std::string parts = "half-flat";
  if (c.entry.su3_coupled) {
    r = std::max(r, sr.r_coupled);
    parts += ", coupled";
  }
  if (!c.entry.su3_symplectic_normal.empty()) {
    VectorXd normal(7);
    for (int i = 0; i < 7; ++i) normal[i] = c.entry.su3_symplectic_normal[i];
    SU3Restriction tilted = su3_restrict(c.structure, normal.normalized(), c.opt.tol);
    r = std::max({r, tilted.r_omega, tilted.r_rho});
    parts += ", symplectic (tilted normal)";
  }
  rep.add({"su3", c.entry.name, r, c.opt.tol, parts, r < c.opt.tol, true, "Section 1", ""});
}

void check_main_theorem(VerifyContext& c, Report& rep) {
  MainTheoremResiduals mt = check_main_theorem(c.entry.quadruple);
  double r = std::max(mt.max(), c.entry.cross_check_residual);
  rep.add({"main_theorem", c.entry.name, r, c.opt.tol,
           std::string("structural=") + format_double(mt.structural) +
               " torsion_action=" + format_double(mt.torsion_action) +
               " trace_identity=" + format_double(mt.trace_identity),
           r < c.opt.tol, true, "Theorem (main)", ""});
}

void check_spectrum(VerifyContext& c, Report& rep) {
  Subspace h{MatrixXd::Identity(7, 7).leftCols(6)};
  auto computed = c.entry.algebra.projective_spectrum(VectorXd::Unit(7, 6), h, c.opt.tol);
  Eigen::Matrix<double, 6, 6> block = Eigen::Matrix<double, 6, 6>::Zero();
  block.topLeftCorner(2, 2) = c.entry.quadruple.A1;
  block.bottomRightCorner(4, 4) = c.entry.quadruple.A;
  auto expected = canonical_projective_spectrum(eigenvalues(block), c.opt.tol);
  double r = spectrum_distance(computed, expected);
  rep.add({"spectrum", c.entry.name, r, c.opt.tol, spectrum_string(computed), r < c.opt.tol,
           true, "Example (rt)", "ad(e7) on span(e1..e6) vs diag(A1, A)"});
}

void check_symmetries_gen(VerifyContext& c, Report& rep) {
  if (c.entry.generators.empty()) {
    rep.add({"symmetries_gen", c.entry.name, 0.0, c.opt.tol, std::string("generators=0"), true,
             true, "Section 6", "no tabulated generators"});
    return;
  }
  GeneratorVerification gv = verify_generators(c.entry, c.opt.tol);
  double worst = 0.0;
  bool membership_ok = true;
  for (const auto& g : gv.generators) {
    worst = std::max({worst, g.automorphism_residual, g.orthogonality_residual});
    membership_ok = membership_ok && g.in_g2_computed == g.in_g2_declared;
  }
  for (const auto& rel : gv.relations) worst = std::max(worst, rel.residual);
  rep.add({"symmetries_gen", c.entry.name, worst, c.opt.tol,
           std::string("generators=") + std::to_string(gv.generators.size()) +
               " relations=" + std::to_string(gv.relations.size()),
           gv.all_pass, true, "Section 6",
           membership_ok ? "" : "G2 membership disagrees with the declared flag"});
}

using CheckFn = void (*)(VerifyContext&, Report&);

const std::vector<std::pair<std::string, CheckFn>>& check_table() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"jacobi", check_jacobi},
      {"closed", check_closed},
      {"torsion", check_torsion},
      {"erp", check_erp},
      {"pinching", check_pinching},
      {"betti", check_betti},
      {"nilradical", check_nilradical},
      {"nilpotency", check_nilpotency},
      {"unimodular", check_unimodular},
      {"csolvable", check_csolvable},
      {"ricci_soliton", check_ricci_soliton},
      {"laplacian_soliton", check_laplacian_soliton},
      {"exactness", check_exactness},
      {"su3", check_su3},
      {"main_theorem", check_main_theorem},
      {"spectrum", check_spectrum},
      {"symmetries_gen", check_symmetries_gen},
  };
  return table;
}

nlohmann::ordered_json params_json(const std::map<std::string, double>& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

int cmd_list(const CliOptions& opt, std::ostream& out) {
  std::vector<std::string> names = registry_names(opt.registry);
  if (opt.json) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["entries"] = names;
    if (!opt.params.empty()) j["params"] = params_json(opt.params);
    out << j.dump(2) << '\n';
    return 0;
  }
  for (const auto& n : names) {
    out << n;
    if (n == "mu_rt" && !opt.params.empty()) {
      out << " (";
      bool first = true;
      for (const auto& [k, v] : opt.params) {
        if (!first) out << ", ";
        out << k << '=' << format_double(v);
        first = false;
      }
      out << ')';
    }
    out << '\n';
  }
  return 0;
}

int cmd_verify(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, CheckFn>> selected;
  if (opt.checks.empty()) {
    selected = check_table();
  } else {
    for (const auto& id : opt.checks) {
      bool found = false;
      for (const auto& entry : check_table())
        if (entry.first == id) {
          selected.push_back(entry);
          found = true;
          break;
        }
      if (!found) {
        err << "unknown check id '" << id << "'\n";
        return 2;
      }
    }
  }

  VerifyContext ctx(opt, registry_load(opt.entry, opt.params, opt.registry));
  Report rep;
  rep.command = "verify";
  rep.meta["entry"] = ctx.entry.name;
  if (!ctx.entry.param_values.empty()) rep.meta["params"] = params_json(ctx.entry.param_values);
  rep.meta["tol"] = opt.tol;
  rep.meta["rank_tol"] = opt.rank_tol;
  for (const auto& sel : selected) {
    try {
      sel.second(ctx, rep);
    } catch (const std::exception& e) {
      rep.add({sel.first, ctx.entry.name, std::nullopt, std::nullopt, std::nullopt, false, true,
               "", std::string("error: ") + e.what()});
    }
  }
  emit(rep, opt, out);
  return rep.all_pass() ? 0 : 1;
}

int cmd_table2(const CliOptions& opt, std::ostream& out) {
  int seeds = opt.seeds < 0 ? 24 : opt.seeds;
  Report rep;
  rep.command = "table2";
  rep.meta["tol"] = opt.tol;
  rep.meta["rank_tol"] = opt.rank_tol;
  rep.meta["seeds"] = seeds;
  rep.meta["rng_seed"] = opt.rng_seed;

  for (const auto& name : registry_names(opt.registry)) {
    RegistryEntry e = registry_load(name, {}, opt.registry);
    const std::string anchor = row_anchor("Table 2", name);

    BettiResult br = e.algebra.betti(opt.rank_tol);
    for (int i = 0; i < 6; ++i) {
      std::string id = "b" + std::to_string(i + 1);
      bool ok = br.b[i + 1] == e.table.betti[i] && br.stable;
      rep.add({id, name, std::nullopt, std::nullopt,
               std::string("computed=") + std::to_string(br.b[i + 1]) +
                   " declared=" + std::to_string(e.table.betti[i]),
               ok, true, anchor, ""});
    }

    Subspace nr = e.algebra.nilradical(opt.rank_tol);
    rep.add({"nilradical", name, std::nullopt, std::nullopt,
             std::string("computed=") + std::to_string(nr.dim()) +
                 " declared=" + std::to_string(e.table.nilradical_dim),
             nr.dim() == e.table.nilradical_dim, true, anchor, ""});

    std::optional<int> deg = e.algebra.subalgebra(nr).nilpotency_degree(opt.rank_tol);
    rep.add({"degree", name, std::nullopt, std::nullopt,
             std::string("computed=") + (deg ? std::to_string(*deg) : "none") +
                 " declared=" + std::to_string(e.table.nilpotency_degree),
             deg && *deg == e.table.nilpotency_degree, true, anchor, ""});

    const std::pair<std::string, std::optional<int>> order_cells[] = {
        {"aut_g2", e.table.aut_g2_order}, {"aut_o7", e.table.aut_o7_order}};
    for (const auto& [id, declared] : order_cells) {
      if (!declared) {
        rep.add({id, name, std::nullopt, std::nullopt, std::string("declared=none"), true,
                 false, anchor, "positive-dimensional symmetry group"});
        continue;
      }
      SymmetryGroup grp = id == "aut_g2" ? SymmetryGroup::G2 : SymmetryGroup::O7;
      SymmetryEnumeration se = enumerate_symmetries(e.algebra, grp, seeds, opt.rng_seed);
      int order = static_cast<int>(se.elements.size());
      rep.add({id, name, se.max_defect, opt.tol,
               std::string("computed=") + std::to_string(order) +
                   " declared=" + std::to_string(*declared),
               order == *declared && se.max_defect < opt.tol, true, anchor, ""});
    }
  }
  emit(rep, opt, out);
  return rep.all_pass() ? 0 : 1;
}

int cmd_classify(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<CaseId> id = case_from_name(opt.case_id);
  if (!id) {
    err << "unknown case '" << opt.case_id << "' (expected 4, 5, 6 or 6rot)\n";
    return 2;
  }
  int seeds = opt.seeds < 0 ? 200 : opt.seeds;

  std::vector<RegistryCandidate> candidates;
  for (const auto& name : {"mu_B", "mu_M1", "mu_M2", "mu_M3", "mu_J"})
    candidates.push_back({name, registry_load(name, {}, opt.registry).quadruple});
  std::string dir = opt.registry;
  auto rt_builder = [dir](double r, double t) {
    return registry_load("mu_rt", {{"r", r}, {"t", t}}, dir).quadruple;
  };

  ConstraintSystem sys = build_system(*id);
  ClassifyOutcome outcome = solve_from_seeds(sys, seeds, opt.rng_seed, candidates, rt_builder);

  Report rep;
  rep.command = "classify";
  rep.meta["case"] = case_name(*id);
  rep.meta["unknowns"] = sys.unknowns;
  rep.meta["seeds"] = seeds;
  rep.meta["rng_seed"] = opt.rng_seed;
  rep.meta["seeds_converged"] = outcome.seeds_converged;
  rep.meta["classes"] = outcome.classes.size();

  if (outcome.classes.empty()) {
    rep.add({"classes", case_name(*id), std::nullopt, std::nullopt, std::string("none"), true,
             false, "", seeds == 0 ? "no seeds requested" : "no convergent seeds"});
  }
  for (const auto& cls : outcome.classes) {
    std::string value = "hits=" + std::to_string(cls.hits) +
                        " rank_deficiency=" + std::to_string(cls.rank_deficiency) +
                        " nilradical=" + std::to_string(cls.fp.nilradical_dim);
    if (cls.rt_estimate)
      value += " r=" + format_double(cls.rt_estimate->first) +
               " t=" + format_double(cls.rt_estimate->second);
    rep.add({"class", cls.matched.empty() ? "unmatched" : cls.matched, cls.best_residual, 1e-11,
             value, !cls.matched.empty(), true,
             cls.matched.empty() ? "" : row_anchor("Table 1", cls.matched), ""});
  }
  emit(rep, opt, out);
  return rep.all_pass() ? 0 : 1;
}

int cmd_symmetries(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  SymmetryGroup grp;
  if (opt.group == "g2")
    grp = SymmetryGroup::G2;
  else if (opt.group == "o7")
    grp = SymmetryGroup::O7;
  else {
    err << "unknown group '" << opt.group << "' (expected g2 or o7)\n";
    return 2;
  }
  int seeds = opt.seeds < 0 ? 32 : opt.seeds;
  RegistryEntry e = registry_load(opt.entry, opt.params, opt.registry);

  SymmetryEnumeration se;
  try {
    se = enumerate_symmetries(e.algebra, grp, seeds, opt.rng_seed);
  } catch (const std::runtime_error& ex) {
    err << ex.what() << '\n';
    return 2;
  }

  Report rep;
  rep.command = "symmetries";
  rep.meta["entry"] = e.name;
  rep.meta["group"] = symmetry_group_name(grp);
  rep.meta["seeds"] = seeds;
  rep.meta["rng_seed"] = opt.rng_seed;
  rep.meta["seeds_converged"] = se.seeds_converged;

  std::optional<int> declared =
      grp == SymmetryGroup::G2 ? e.table.aut_g2_order : e.table.aut_o7_order;
  int order = static_cast<int>(se.elements.size());
  rep.add({"order", e.name, std::nullopt, std::nullopt,
           std::string("computed=") + std::to_string(order) +
               (declared ? " declared=" + std::to_string(*declared) : ""),
           !declared || order == *declared, true, row_anchor("Table 2", e.name),
           declared ? "" : "no declared order"});

  std::string hist;
  for (const auto& [k, count] : se.order_histogram) {
    if (!hist.empty()) hist += " ";
    hist += std::to_string(k) + ":" + std::to_string(count);
  }
  rep.add({"element_orders", e.name, std::nullopt, std::nullopt, hist, true, true, "Section 6",
           "order:count"});

  rep.add({"defect", e.name, se.max_defect, opt.tol, std::nullopt, se.max_defect < opt.tol,
           true, "Section 6", "worst automorphism/orthogonality/invariance residual"});

  int present = 0;
  for (const auto& gen : e.generators) {
    bool in_group = grp == SymmetryGroup::O7 || gen.in_g2;
    if (!in_group) continue;
    for (const auto& h : se.elements)
      if ((h - gen.matrix).cwiseAbs().maxCoeff() < 1e-6) {
        ++present;
        break;
      }
  }
  int expected_present = 0;
  for (const auto& gen : e.generators)
    if (grp == SymmetryGroup::O7 || gen.in_g2) ++expected_present;
  rep.add({"generators_present", e.name, std::nullopt, std::nullopt,
           std::to_string(present) + "/" + std::to_string(expected_present),
           present == expected_present, true, "Section 6", ""});

  emit(rep, opt, out);
  return rep.all_pass() ? 0 : 1;
}

int cmd_theta(const CliOptions& opt, std::ostream& out) {
  RegistryEntry e = registry_load(opt.entry, opt.params, opt.registry);
  const std::pair<std::string, Matrix4d> blocks[] = {
      {"A", e.quadruple.A}, {"B", e.quadruple.B}, {"C", e.quadruple.C}};
  if (opt.json) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["entry"] = e.name;
    if (!e.param_values.empty()) j["params"] = params_json(e.param_values);
    j["basis"] = {"tau", "wbar3", "wbar4", "w7", "w3", "w4"};
    for (const auto& [name, m] : blocks) {
      Matrix6d t = theta(m);
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (int r = 0; r < 6; ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < 6; ++c) row.push_back(t(r, c));
        rows.push_back(std::move(row));
      }
      j["theta_" + name] = std::move(rows);
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "theta matrices of " << e.name
      << " in the basis (tau, wbar3, wbar4, w7, w3, w4)\n";
  for (const auto& [name, m] : blocks) {
    Matrix6d t = theta(m);
    out << "theta(" << name << "):\n";
    for (int r = 0; r < 6; ++r) {
      out << " ";
      for (int c = 0; c < 6; ++c) out << ' ' << format_double(t(r, c));
      out << '\n';
    }
  }
  return 0;
}

} // namespace

std::map<std::string, double> parse_params(const std::string& s) {
  std::map<std::string, double> out;
  if (s.empty()) return out;
  std::istringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("bad parameter assignment '" + item +
                                  "' (expected name=value)");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    size_t used = 0;
    double v = std::stod(val, &used);
    if (used != val.size())
      throw std::invalid_argument("bad parameter value '" + val + "'");
    out[key] = v;
  }
  return out;
}

const std::vector<std::string>& verify_check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& sel : check_table()) v.push_back(sel.first);
    return v;
  }();
  return ids;
}

int run_command(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  int code;
  try {
    if (opt.command == "list")
      code = cmd_list(opt, out);
    else if (opt.command == "verify")
      code = cmd_verify(opt, out, err);
    else if (opt.command == "table2")
      code = cmd_table2(opt, out);
    else if (opt.command == "classify")
      code = cmd_classify(opt, out, err);
    else if (opt.command == "symmetries")
      code = cmd_symmetries(opt, out, err);
    else if (opt.command == "theta")
      code = cmd_theta(opt, out);
    else {
      err << "unknown command '" << opt.command
          << "' (expected list, verify, table2, classify, symmetries or theta)\n";
      return 2;
    }
  } catch (const std::exception& ex) {
    err << ex.what() << '\n';
    return 2;
  }
  /* Wall time goes to the diagnostic stream so reports stay byte-identical
   * across reruns. */
  if (opt.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    err << "wall_ms=" << ms << '\n';
  }
  return code;
}

} // namespace g2cert
