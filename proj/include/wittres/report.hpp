#pragma once

// JSON and text views of command results. Documents are built with
// insertion-ordered keys so equal inputs serialize to equal bytes.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wittres/modring.hpp"
#include "wittres/multipoly.hpp"
#include "wittres/rational.hpp"
#include "wittres/series.hpp"
#include "wittres/witt.hpp"

namespace wittres {

using Json = nlohmann::ordered_json;

constexpr const char* kSchemaTag = "witt-residue/1";

inline long json_int(const BigInt& v) {
  if (!v.fits_slong_p())
    fail(errc::unsupported, "value too large for the report: " + v.get_str());
  return v.get_si();
}

inline Json zpm_json(const Zpm& z) {
  Json j;
  j["mod"] = json_int(z.ring().modulus);
  j["value"] = json_int(z.value());
  return j;
}

inline Json witt_digits_json(const WittVector<Zpm>& w) {
  Json a = Json::array();
  for (int i = 0; i < w.length(); ++i)
    a.push_back(json_int(w.component(i).value()));
  return a;
}

inline std::string monomial_str(const Monomial& m,
                                const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline Json monomials_json(const std::vector<Monomial>& ms,
                           const std::vector<std::string>& names) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(monomial_str(m, names));
  return a;
}

inline Json rational_matrix_json(const std::vector<std::vector<Rational>>& k) {
  Json rows = Json::array();
  for (const auto& row : k) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.str());
    rows.push_back(std::move(r));
  }
  return rows;
}

// Coefficients of t^0 .. t^(order-1); entries must not reach below t^0.
inline Json series_coeffs_json(const Series<Rational>& s) {
  require_internal(s.lower() >= 0, "negative t power in a report");
  Json a = Json::array();
  for (long k = 0; k < s.order(); ++k) a.push_back(s.coeff(k).str());
  return a;
}

struct Report {
  Json doc;
  std::string text;
};

inline Report make_report(const std::string& command) {
  Report r;
  r.doc["schema"] = kSchemaTag;
  r.doc["command"] = command;
  r.doc["status"] = "ok";
  return r;
}

inline void emit_report(std::ostream& os, const Report& r, bool as_json) {
  if (as_json)
    os << r.doc.dump(2) << "\n";
  else
    os << r.text;
}

}  // namespace wittres
