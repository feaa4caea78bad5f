#include "cacforge/serialize.hpp"

namespace cacforge {

ojson to_json(const FieldCtx& field) {
  ojson j;
  j["q"] = field.q();
  j["p"] = field.p();
  j["k"] = field.k();
  j["modulus"] = format_polynomial(field.modulus());
  j["modulus_coeffs"] = field.modulus();
  j["generator"] = field.format(field.generator());
  j["generator_count"] = euler_phi(field.group_order());
  return j;
}

ojson to_json(const FieldCtx& field, const DiagonalReport& report) {
  ojson j;
  j["q"] = report.q;
  j["ell"] = report.ell;
  j["g"] = field.format(report.g);
  j["n_affine"] = report.n_affine;
  j["n_proj"] = report.n_proj;
  if (report.witness) {
    j["witness"] = {{"g", field.format(report.witness->g)},
                    {"x", field.format(report.witness->x)},
                    {"y", field.format(report.witness->y)}};
  } else {
    j["witness"] = nullptr;
  }
  ojson pts = ojson::array();
  for (const auto& pt : report.zero_coord_solutions) {
    pts.push_back({field.format(pt[0]), field.format(pt[1]), field.format(pt[2])});
  }
  j["zero_coord_solutions"] = std::move(pts);
  return j;
}

ojson to_json(const FieldCtx&, const ZeroCoordClassification& c) {
  ojson j;
  j["exists"] = c.exists;
  j["predicted"] = c.predicted;
  j["minus_one_in_L"] = c.minus_one_in_L;
  j["x_zero"] = c.x_zero;
  j["y_zero"] = c.y_zero;
  j["z_zero"] = c.z_zero;
  return j;
}

ojson to_json(const BoundSheet& s) {
  ojson j;
  j["ell"] = s.ell;
  j["omega"] = s.omega;
  j["delta"] = s.delta;
  j["b"] = s.b_ell;
  j["genus"] = s.genus;
  j["crude_q_threshold"] = s.crude_q_threshold;
  j["hasse_weil_threshold"] = s.hasse_weil_threshold;
  return j;
}

ojson to_json(const CacSizeSheet& s) {
  ojson j;
  j["p"] = s.p;
  j["o2"] = s.o2;
  j["ell0"] = s.ell0;
  j["O"] = s.O_p;
  j["lower"] = s.lower;
  j["upper"] = s.upper;
  j["m_target"] = s.m_target ? ojson(*s.m_target) : ojson(nullptr);
  return j;
}

ojson to_json(const TripleWitness& tw) {
  ojson j;
  j["p"] = tw.p;
  j["ell0"] = tw.ell0;
  j["g"] = tw.g;
  j["x"] = tw.x;
  j["y"] = tw.y;
  j["triples"] = tw.triples;
  j["coset_labels"] = tw.labels;
  return j;
}

ojson to_json(const ScanRecord& rec, bool timing) {
  ojson j;
  j["p"] = rec.p;
  j["ell0"] = rec.ell0;
  j["verdict"] = to_string(rec.verdict);
  if (rec.witness) {
    j["witness"] = {{"g", rec.witness->g}, {"x", rec.witness->x}, {"y", rec.witness->y}};
  } else {
    j["witness"] = nullptr;
  }
  j["ms"] = timing ? rec.ms : 0.0;
  return j;
}

ojson to_json(const PEllSet& s) {
  ojson j;
  j["ell"] = s.ell;
  j["bound"] = s.bound;
  j["lo"] = s.lo;
  j["primes"] = s.primes;
  return j;
}

}  // namespace cacforge
