#include "sda/io.hpp"

namespace sda {

namespace {

template <typename Scalar, typename Emit>
Json matrix_json(const Matrix<Scalar>& m, const char* type, Emit&& emit) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(emit(m(i, j)));
    entries.push_back(std::move(row));
  }
  return Json{{"type", type}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <typename Scalar, typename Read>
Matrix<Scalar> matrix_from(const Json& j, Read&& read) {
  const auto rows = j.at("rows").get<Eigen::Index>(), cols = j.at("cols").get<Eigen::Index>();
  const Json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows)
    throw DimensionError("matrix JSON: row count mismatch");
  Matrix<Scalar> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw DimensionError("matrix JSON: column count mismatch");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = read(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(z.str());
  return out;
}

}  // namespace

Json to_json(const RatMatrix& m) {
  return matrix_json(m, "rational", [](const Rational& q) { return q.str(); });
}
Json to_json(const IntMatrix& m) {
  return matrix_json(m, "integer", [](const Integer& z) { return z.str(); });
}
Json to_json(const FloatMatrix& m) {
  return matrix_json(m, "float", [](double x) { return x; });
}

RatMatrix rat_matrix_from_json(const Json& j) {
  return matrix_from<Rational>(j, [](const Json& e) {
    return e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long long>());
  });
}
IntMatrix int_matrix_from_json(const Json& j) {
  return matrix_from<Integer>(j, [](const Json& e) {
    return e.is_string() ? parse_integer(e.get<std::string>()) : Integer(e.get<long long>());
  });
}
FloatMatrix float_matrix_from_json(const Json& j) {
  return matrix_from<double>(j, [](const Json& e) { return e.get<double>(); });
}

Json to_json(const VertexMap& f) {
  return Json{{"source_size", f.source_size()}, {"target_size", f.target_size}, {"image", f.image}};
}

Json to_json(const OrbitalStructure& o) {
  Json out{{"source", o.tag()}, {"vertices", o.vertices.str()}, {"count", o.count()}};
  out["sizes"] = integers(o.sizes);
  out["diagonal"] = o.diagonal;
  out["edge"] = o.edge;
  if (o.materialized()) {
    Json reps = Json::array();
    const std::size_t p = o.order();
    std::vector<bool> seen(o.count(), false);
    std::vector<Json> first(o.count());
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = 0; y < p; ++y)
        if (!seen[o.at(x, y)]) {
          seen[o.at(x, y)] = true;
          first[o.at(x, y)] = Json::array({x, y});
        }
    for (auto& r : first) reps.push_back(std::move(r));
    out["representatives"] = std::move(reps);
  }
  return out;
}

Json to_json(const CharacterTable& t) {
  Json out{{"convention", t.convention}, {"exact", t.is_exact()}};
  out["table"] = t.exact ? to_json(*t.exact) : to_json(t.numeric);
  out["multiplicities"] = integers(t.multiplicities);
  return out;
}

Json to_json(const AxiomReport& r) {
  return Json{{"s1", r.s1}, {"s2", r.s2}, {"s3", r.s3}, {"s4", r.s4}, {"s5", r.s5},
              {"all", r.all()}, {"witnesses", r.witnesses}};
}

Json to_json(const RelaxReport& r) {
  return Json{{"r1", r.r1},
              {"r2", r.r2},
              {"r3", r.r3},
              {"r4", r.r4},
              {"r5", r.r5},
              {"r6", r.r6},
              {"nonnegative", r.nonnegative},
              {"symmetric", r.symmetric},
              {"psd", r.psd},
              {"integral", r.integral},
              {"witnesses", r.witnesses}};
}

Json to_json(const Spectrum& s) {
  Json clusters = Json::array();
  for (const auto& c : s.clusters) clusters.push_back(Json{{"value", c.value}, {"multiplicity", c.multiplicity}});
  return clusters;
}

Json to_json(const FoolingParams& p) {
  Json out{{"n", p.n}};
  out["nprime"] = p.nprime ? Json(*p.nprime) : Json(nullptr);
  out["delta"] = p.delta.str();
  out["t"] = p.t;
  out["s"] = p.s;
  out["max_abs_z"] = p.max_abs_z;
  return out;
}

Json to_json(const FoolingCertificate& c) {
  Json out{{"params", to_json(c.params)}, {"V", to_json(c.v)}, {"exact", c.exact}};
  out["checks"] = Json{{"c1", c.c1},
                       {"c2", c.c2},
                       {"c3", c.c3},
                       {"c4", c.c4},
                       {"rows_nonvanishing", c.rows_nonvanishing},
                       {"closed_form_match", c.closed_form_match}};
  out["spectrum_pattern"] = c.spectrum_exact ? to_json(*c.spectrum_exact) : to_json(c.spectrum);
  out["chromatic_number"] = c.chromatic;
  out["chromatic_gap"] = c.chromatic_gap;
  out["all"] = c.all();
  return out;
}

Json to_json(const FoolingWitness& w, bool include_matrices) {
  Json out{{"M", to_json(w.m_report)}, {"N", to_json(w.n_report)}, {"refinement", w.refinement}};
  out["spectrum"] = to_json(w.spectrum);
  out["min_eigenvalue"] = w.min_eigenvalue;
  out["spectrum_match"] = w.spectrum_match;
  out["all"] = w.all();
  if (include_matrices) {
    out["M_matrix"] = to_json(w.m);
    out["N_matrix"] = to_json(w.n);
  }
  return out;
}

Json to_json(const SlaterReport& r) {
  return Json{{"in_U", r.in_u},         {"psd", r.psd},
              {"balanced", r.balanced}, {"spectrum_pattern", to_json(r.spectrum_pattern)},
              {"spectrum", to_json(r.spectrum)}, {"spectrum_match", r.spectrum_match},
              {"all", r.all()}};
}

Json to_json(const NonSlaterReport& r) {
  return Json{{"step", r.step.str()},
              {"H_in_W", r.h_in_w},
              {"N_in_W", r.n_in_w},
              {"within_radius", r.within_radius},
              {"min_eigenvalue", r.min_eigenvalue},
              {"not_psd", r.not_psd},
              {"all", r.all()}};
}

Json to_json(const AipAssignment& mu) {
  return Json{{"vertex", to_json(mu.vertex)}, {"edge", to_json(mu.edge)}};
}

}  // namespace sda
