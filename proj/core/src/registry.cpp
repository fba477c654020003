#include "g2cert/registry.hpp"

#include "g2cert/coeff_grammar.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#ifndef G2CERT_BUILD_REGISTRY_DIR
#define G2CERT_BUILD_REGISTRY_DIR ""
#endif

namespace g2cert {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double eval_param(const std::string& p, const std::map<std::string, double>& params) {
  if (p == "r+t") {
    double r = params.count("r") ? params.at("r") : 0.0;
    double t = params.count("t") ? params.at("t") : 0.0;
    return r + t;
  }
  auto it = params.find(p);
  return it == params.end() ? 0.0 : it->second;
}

/* A cell is a grammar string, an object {"coeff": str, "param": str}, or an
 * array of those (sum). */
double eval_cell(const json& cell, const std::map<std::string, double>& params) {
  if (cell.is_string()) return parse_coeff(cell.get<std::string>());
  if (cell.is_number()) {
    double v = cell.get<double>();
    if (v != 0.0) throw std::invalid_argument("registry: numeric cells must be 0");
    return 0.0;
  }
  if (cell.is_object()) {
    double v = parse_coeff(cell.at("coeff").get<std::string>());
    if (cell.contains("param")) v *= eval_param(cell.at("param").get<std::string>(), params);
    return v;
  }
  if (cell.is_array()) {
    double v = 0.0;
    for (const auto& part : cell) v += eval_cell(part, params);
    return v;
  }
  throw std::invalid_argument("registry: malformed coefficient cell");
}

Eigen::MatrixXd eval_matrix(const json& rows, int n, const std::map<std::string, double>& params) {
  Eigen::MatrixXd m(n, n);
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("registry: matrix must have " + std::to_string(n) + " rows");
  for (int r = 0; r < n; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("registry: matrix row length mismatch");
    for (int c = 0; c < n; ++c) m(r, c) = eval_cell(row[c], params);
  }
  return m;
}

const std::vector<std::string>& canonical_order() {
  static const std::vector<std::string> order = {"mu_B", "mu_M1", "mu_M2",
                                                 "mu_M3", "mu_J", "mu_rt"};
  return order;
}

} // namespace

std::string registry_dir(const std::string& override_dir) {
  std::string dir = override_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("G2CERT_REGISTRY")) dir = env;
  }
  if (dir.empty()) dir = G2CERT_BUILD_REGISTRY_DIR;
  bool has_entries = false;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.path().extension() == ".json") {
      has_entries = true;
      break;
    }
  }
  if (ec || !has_entries)
    throw std::runtime_error("registry directory '" + dir + "' has no entries");
  return dir;
}

std::vector<std::string> registry_names(const std::string& dir) {
  std::string d = registry_dir(dir);
  std::vector<std::string> found;
  for (const auto& e : fs::directory_iterator(d))
    if (e.path().extension() == ".json") found.push_back(e.path().stem().string());
  std::sort(found.begin(), found.end());
  std::vector<std::string> out;
  for (const auto& name : canonical_order()) {
    auto it = std::find(found.begin(), found.end(), name);
    if (it != found.end()) {
      out.push_back(name);
      found.erase(it);
    }
  }
  out.insert(out.end(), found.begin(), found.end());
  return out;
}

RegistryEntry registry_load(const std::string& name,
                            const std::map<std::string, double>& params,
                            const std::string& dir) {
  fs::path path = fs::path(registry_dir(dir)) / (name + ".json");
  std::ifstream in(path);
  if (!in) throw std::out_of_range("registry entry '" + name + "' not found at " + path.string());
  json doc = json::parse(in);
  if (doc.value("dim", 7) != 7)
    throw std::invalid_argument("registry: only dim 7 entries are supported");

  std::vector<std::string> declared = doc.value("params", std::vector<std::string>{});
  for (const auto& [key, value] : params)
    if (std::find(declared.begin(), declared.end(), key) == declared.end())
      throw std::invalid_argument("entry '" + name + "' has no parameter '" + key + "'");

  // Bracket from the d-table: de^k(e_i, e_j) = -e^k([e_i, e_j]).
  LieAlgebra from_d(7, name);
  {
    std::vector<Eigen::MatrixXd> c(8, Eigen::MatrixXd::Zero(7, 7)); // c[k](i,j), i<j
    const auto& d = doc.at("d");
    for (int k = 1; k <= 7; ++k) {
      std::string key = "e" + std::to_string(k);
      if (!d.contains(key)) continue;
      for (const auto& rec : d.at(key)) {
        int i = rec.at("form")[0].get<int>();
        int j = rec.at("form")[1].get<int>();
        if (i < 1 || j <= i || j > 7)
          throw std::invalid_argument("registry: d-record needs 1 <= i < j <= 7");
        double coeff = parse_coeff(rec.at("coeff").get<std::string>());
        if (rec.contains("param")) coeff *= eval_param(rec.at("param").get<std::string>(), params);
        c[k](i - 1, j - 1) += coeff;
      }
    }
    for (int i = 1; i <= 7; ++i)
      for (int j = i + 1; j <= 7; ++j) {
        Eigen::VectorXd v(7);
        for (int k = 1; k <= 7; ++k) v(k - 1) = -c[k](i - 1, j - 1);
        from_d.set_bracket(i, j, v);
      }
  }

  RegistryEntry entry{.name = name,
                      .params = declared,
                      .param_values = params,
                      .algebra = from_d,
                      .quadruple = Quadruple{},
                      .table = TableRow{},
                      .unimodular = doc.at("unimodular").get<bool>(),
                      .completely_solvable = doc.at("completely_solvable").get<bool>(),
                      .tr_a1_inv = std::nullopt,
                      .skew_derivations = doc.at("skew_derivations").get<int>(),
                      .su3_coupled = doc.value("su3_coupled", false),
                      .su3_symplectic_normal = {},
                      .generators = {},
                      .relations = {},
                      .cross_check_residual = 0.0};
  for (const auto& p : declared)
    entry.param_values.emplace(p, 0.0);

  const auto& qd = doc.at("quadruple");
  entry.quadruple.A1 = eval_matrix(qd.at("A1"), 2, params);
  entry.quadruple.A = eval_matrix(qd.at("A"), 4, params);
  entry.quadruple.B = eval_matrix(qd.at("B"), 4, params);
  entry.quadruple.C = eval_matrix(qd.at("C"), 4, params);

  LieAlgebra from_q = assemble_bracket(entry.quadruple, name);
  double worst = 0.0;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j)
      worst = std::max(worst,
                       (from_d.bracket_basis(i, j) - from_q.bracket_basis(i, j))
                           .cwiseAbs()
                           .maxCoeff());
  entry.cross_check_residual = worst;

  const auto& table = doc.at("table");
  auto betti = table.at("betti");
  // Betti numbers can jump on parameter subvarieties; "betti" describes the
  // all-zero instantiation and "betti_generic" every other one.
  bool off_origin = std::any_of(params.begin(), params.end(),
                                [](const auto& kv) { return kv.second != 0.0; });
  if (off_origin && table.contains("betti_generic")) betti = table.at("betti_generic");
  for (int i = 0; i < 6; ++i) entry.table.betti[i] = betti[i].get<int>();
  entry.table.nilradical_dim = table.at("nilradical_dim").get<int>();
  entry.table.nilpotency_degree = table.at("nilpotency_degree").get<int>();
  if (!table.at("aut_g2_order").is_null())
    entry.table.aut_g2_order = table.at("aut_g2_order").get<int>();
  if (!table.at("aut_o7_order").is_null())
    entry.table.aut_o7_order = table.at("aut_o7_order").get<int>();

  if (doc.contains("tr_a1_inv") && !doc.at("tr_a1_inv").is_null())
    entry.tr_a1_inv = parse_coeff(doc.at("tr_a1_inv").get<std::string>());

  if (doc.contains("su3_symplectic_normal"))
    for (const auto& cell : doc.at("su3_symplectic_normal"))
      entry.su3_symplectic_normal.push_back(eval_cell(cell, params));

  if (doc.contains("generators")) {
    for (const auto& g : doc.at("generators")) {
      GeneratorSpec spec;
      spec.name = g.at("name").get<std::string>();
      spec.in_g2 = g.at("in_g2").get<bool>();
      Eigen::MatrixXd m = eval_matrix(g.at("matrix"), 7, params);
      spec.matrix = quadruple_to_standard(m); // files use (e7,e3,e4,e1,e2,e5,e6)
      entry.generators.push_back(std::move(spec));
    }
  }
  if (doc.contains("relations"))
    for (const auto& rel : doc.at("relations"))
      entry.relations.push_back(rel.get<std::vector<std::string>>());

  return entry;
}

} // namespace g2cert
