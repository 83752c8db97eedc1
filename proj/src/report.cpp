#include "eulerprod/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eulerprod/exponent.hpp"

namespace eulerprod {

Json to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return v.convert_to<long long>();
  }
  return v.str();
}

Json to_json(const MultiIndex& m) {
  Json out = Json::array();
  for (int x : m) out.push_back(x);
  return out;
}

Json exponent_json(const ExponentVector& a) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i) out.push_back(a(i));
  return out;
}

Json to_json(const SparsePolynomial& h) {
  Json terms = Json::array();
  for (const auto& t : h.terms()) terms.push_back({{"coefficient", t.coefficient}, {"exponent", exponent_json(t.exponent)}});
  return Json{{"text", h.to_string()}, {"n", h.n()}, {"terms", terms}};
}

Json to_json(const UnivariatePolynomial& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coefficients) coeffs.push_back(to_json(c));
  return Json{{"text", f.to_string()}, {"coefficients", coeffs}};
}

Json to_json(const ExpansionTable& table) {
  Json entries = Json::array();
  for (const auto& [beta, g] : table.entries) entries.push_back({{"beta", to_json(beta)}, {"gamma", to_json(g)}});
  return Json{{"beta_bound", table.beta_bound},
              {"distance_constant", to_json(table.distance_constant)},
              {"nonzero_entries", entries.size()},
              {"entries", entries}};
}

Json to_json(const ExpansionCheck& check) {
  Json out{{"passed", check.passed}, {"degree_bound", check.degree_bound}, {"factors", check.factors}};
  if (check.first_mismatch) {
    out["first_mismatch"] = to_json(*check.first_mismatch);
    out["expected"] = to_json(check.expected);
    out["found"] = to_json(check.found);
  }
  return out;
}

namespace {

Json factorization_json(const std::map<MultiIndex, BigInt>& factors) {
  Json out = Json::array();
  for (const auto& [lambda, k] : factors) out.push_back({{"lambda", to_json(lambda)}, {"exponent", to_json(k)}});
  return out;
}

}  // namespace

Json to_json(const CyclotomyVerdict& verdict) {
  Json out{{"kind", to_string(verdict.kind)},
           {"beta_bound", verdict.beta_bound},
           {"degree_bound", verdict.degree_bound},
           {"factorization", factorization_json(verdict.factorization)}};
  if (verdict.witness) {
    Json w{{"substitution", verdict.witness->substitution},
           {"specialization", to_json(verdict.witness->specialization)},
           {"reason", verdict.witness->reason}};
    if (verdict.witness->root) {
      w["root"] = to_json(*verdict.witness->root);
      w["root_modulus"] = std::abs(*verdict.witness->root);
    }
    out["witness"] = w;
  }
  return out;
}

Json to_json(const CyclotomicRemoval& removal) {
  return Json{{"residual", to_json(removal.residual)}, {"removed", factorization_json(removal.removed)}};
}

Json to_json(const HalfspaceSystem& system) {
  Json rows = Json::array();
  for (const auto& row : system.rows) rows.push_back({{"normal", row.normal}, {"offset", to_json(row.offset)}});
  return Json{{"n", system.n}, {"rows", rows}};
}

Json to_json(const FaceReport& face) {
  Json out{{"e", face.e},
           {"polar", exponent_json(face.polar)},
           {"primitive", exponent_json(face.primitive)},
           {"lambda_e", face.lambda_e},
           {"supporting", face.supporting}};
  if (face.witness) {
    Json w = Json::array();
    for (const auto& q : *face.witness) w.push_back(to_json(q));
    out["witness"] = w;
  }
  out["ray_polynomial"] = to_json(face.ray_polynomial);
  out["nondegenerate"] = face.nondegenerate;
  out["hypothesis_H"] = face.hypothesis_H;
  out["coprime_condition"] = face.coprime_condition;
  return out;
}

Json to_json(const BoundaryVerdict& verdict) {
  Json faces = Json::array();
  for (const auto& f : verdict.faces) faces.push_back(to_json(f));
  Json qualifying = Json::array();
  for (const auto& f : verdict.qualifying) qualifying.push_back(f.e);
  Json out{{"kind", to_string(verdict.kind)},
           {"rank", verdict.rank},
           {"qualifying_faces", qualifying},
           {"faces", faces},
           {"cyclotomic_removal", to_json(verdict.removal)}};
  if (verdict.residual_cyclotomy) out["residual_cyclotomy"] = to_json(*verdict.residual_cyclotomy);
  out["diagnostics"] = verdict.diagnostics;
  return out;
}

Json to_json(const DirectProduct& product) {
  return Json{{"value", to_json(product.value)},
              {"prime_cutoff", product.prime_cutoff},
              {"outside_absolute_convergence", product.outside_absolute_convergence}};
}

Json to_json(const ContinuationResult& result) {
  Json ledger = Json::array();
  for (const auto& e : result.ledger) {
    ledger.push_back({{"shell", e.shell}, {"contributing", e.contributing}, {"increment", to_json(e.increment)},
                      {"increment_abs", std::abs(e.increment)}});
  }
  Json out{{"value", to_json(result.value)},
           {"finite_product", to_json(result.finite_product)},
           {"log_zeta_part", to_json(result.log_zeta_part)},
           {"m_delta", result.m_delta},
           {"certified_bound", result.certified_bound},
           {"tail_tolerance", result.tail_tolerance},
           {"stagnation_ledger", ledger}};
  if (result.nearest) {
    out["nearest_singularity"] = {{"beta", to_json(result.nearest->beta)},
                                  {"rho", to_json(result.nearest->rho)},
                                  {"distance", result.nearest->distance}};
  }
  return out;
}

Json to_json(const BasePoint& base) {
  Json sigma = Json::array();
  for (const auto& q : base.sigma0) sigma.push_back(to_json(q));
  Json tau = Json::array();
  for (Eigen::Index i = 0; i < base.tau0.size(); ++i) tau.push_back(base.tau0(i));
  return Json{{"e", base.e}, {"sigma0", sigma}, {"tau0", tau}, {"seed", base.genericity_seed}, {"draws", base.draws}};
}

Json to_json(const DirectionConfig& dir) {
  return Json{{"theta", dir.theta},     {"pairings", dir.pairings}, {"ray_pairing", dir.ray_pairing},
              {"parity", dir.parity},   {"q", dir.q},               {"height", dir.height}};
}

Json to_json(const PuiseuxBranch& branch) {
  Json out{{"c0", to_json(branch.c0)}, {"c0_modulus", std::abs(branch.c0)}, {"c1", to_json(branch.c1)}};
  out["theta1"] = branch.theta1 ? Json(*branch.theta1) : Json(nullptr);
  if (branch.theta1_exact) out["theta1_exact"] = to_json(*branch.theta1_exact);
  out["descending"] = branch.descending;
  out["generic"] = genericity_check(branch);
  if (branch.e_prime) out["e_prime"] = *branch.e_prime;
  if (!branch.residual_profile.empty()) {
    out["max_residual"] = *std::max_element(branch.residual_profile.begin(), branch.residual_profile.end());
    out["grid_points"] = branch.grid.size();
  }
  return out;
}

Json to_json(const PrimeCount& count) {
  return Json{{"p", count.p},
              {"omega", to_json(count.omega)},
              {"real_part", count.real_part},
              {"m_first", count.m_first},
              {"m_last", count.m_last},
              {"count", count.count},
              {"floor_bound", count.floor_bound}};
}

Json to_json(const RectangleCount& count) {
  Json ledger = Json::array();
  for (const auto& pc : count.ledger) ledger.push_back(to_json(pc));
  return Json{{"u", count.u},           {"eta", count.eta},     {"nu", count.nu},
              {"re_low", count.re_low}, {"re_high", count.re_high}, {"total", count.total},
              {"untracked_primes", count.untracked}, {"ledger", ledger}};
}

Json to_json(const InterferenceReport& report) {
  Json out{{"threshold", report.threshold}, {"flagged", report.flagged}};
  out["min_distance"] = std::isfinite(report.min_distance) ? Json(report.min_distance) : Json(nullptr);
  return out;
}

Json to_json(const FaceAnalysis& analysis) {
  Json primes = Json::array();
  for (const auto& pa : analysis.primes) {
    Json roots = Json::array();
    for (const auto& r : pa.ray.roots) roots.push_back(to_json(r));
    Json closed = Json::array();
    for (const auto& b : pa.closed_form) closed.push_back(to_json(b));
    Json zeros = Json::array();
    for (std::size_t k = 0; k < pa.lattice.points.size(); ++k) {
      Json z{{"m", pa.lattice.points[k].m}, {"t", to_json(pa.lattice.points[k].t)}};
      if (k < pa.checks.size()) {
        z["refined"] = to_json(pa.checks[k].t);
        z["residual"] = pa.checks[k].residual;
        z["newton_steps"] = pa.checks[k].steps;
      }
      zeros.push_back(z);
    }
    Json entry{{"p", pa.p}, {"ray_polynomial", to_json(pa.ray.integer)}, {"roots", roots}, {"closed_form", closed}};
    entry["tracked"] = pa.tracked ? to_json(*pa.tracked) : Json(nullptr);
    entry["omega"] = to_json(pa.lattice.omega);
    entry["positive_real_part"] = pa.lattice.positive_real_part;
    entry["zeros"] = zeros;
    entry["window"] = to_json(pa.window);
    primes.push_back(entry);
  }
  return Json{{"base_point", to_json(analysis.base)},
              {"direction", to_json(analysis.direction)},
              {"ray_cyclotomic", analysis.ray_cyclotomic},
              {"e_prime", analysis.e_prime},
              {"primes", primes},
              {"rectangle", to_json(analysis.rectangle)},
              {"singular_candidates", analysis.candidates.size()},
              {"interference", to_json(analysis.interference)},
              {"diagnostics", analysis.diagnostics}};
}

Json make_document(const std::string& command, Json inputs, Json settings, Json results) {
  return Json{{"schema", kReportSchema},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"settings", std::move(settings)},
              {"results", std::move(results)}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace eulerprod
