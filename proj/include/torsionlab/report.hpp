#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "torsionlab/classify.hpp"
#include "torsionlab/delta.hpp"
#include "torsionlab/ideal.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab::report {

using Json = nlohmann::ordered_json;

inline Json indices(const std::vector<Index>& xs) { return Json(xs); }

inline Json names(const FiniteRing& ring, const std::vector<Index>& xs) {
  Json out = Json::array();
  for (Index x : xs) out.push_back(ring.display(x));
  return out;
}

inline Json ideal(const LeftIdeal& a) {
  return Json{{"size", a.size()},
              {"elements", a.elements().to_vector()},
              {"generators", a.generators()},
              {"generator_names", names(*a.ring(), a.generators())},
              {"two_sided", is_two_sided(a)}};
}

inline Json ideal(const TwoSidedIdeal& a) { return ideal(a.as_left()); }

inline Json violation(const AxiomViolation& v) {
  Json out{{"axiom", v.axiom}, {"violated", v.violated}};
  if (!v.reading.empty()) out["reading"] = v.reading;
  Json ideals = Json::array();
  for (const auto& a : v.ideals) ideals.push_back(ideal(a));
  out["ideals"] = std::move(ideals);
  out["elements"] = v.elements;
  if (!v.xs.empty() || !v.ys.empty()) {
    out["xs"] = v.xs;
    out["ys"] = v.ys;
  }
  out["message"] = v.message;
  return out;
}

inline Json notion(const TorsionNotion& f) {
  Json members = Json::array();
  for (const auto& a : f.members()) members.push_back(ideal(a));
  return members;
}

inline Json rcm(const RcmReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"module", f.module}, {"kind", f.kind}, {"detail", f.detail}});
  return Json{{"modules_checked", r.modules_checked},
              {"torsion_free_modules", r.torsion_free_modules},
              {"all_modular", r.all_modular},
              {"all_wep", r.all_wep},
              {"passed", r.passed()},
              {"failures", std::move(failures)}};
}

inline Json collapse(const CollapseTrace& t) {
  const auto& ring = *t.minimum.ring();
  return Json{{"minimum", ideal(t.minimum)},
              {"idempotent_ideal", t.idempotent_ideal},
              {"e", t.idempotent},
              {"e_name", ring.display(t.idempotent)},
              {"one_minus_e", t.complement},
              {"complement_annihilated", t.complement_annihilated},
              {"steps", t.steps}};
}

inline Json reduced(const ReducedDelta& d) {
  const auto& ring = *d.ideal.ring();
  Json rows = Json::array();
  for (const auto& r : d.rows) rows.push_back(Json{{"a", r.a}, {"a_name", ring.display(r.a)}, {"c", r.c}});
  return Json{{"rows", std::move(rows)}, {"ideal", ideal(d.ideal)}, {"quasiidentity", Quasiidentity(d.ideal).render()}};
}

inline Json classification(const ClassificationVerdict& v) {
  Json quasi = Json::array();
  for (const auto& q : v.quasi) quasi.push_back(q.render());
  Json filter = Json::array();
  for (const auto& a : v.filter) filter.push_back(ideal(a));
  Json out{{"ring", v.ring->name()},
           {"quasiidentities", std::move(quasi)},
           {"identity_ideal", ideal(v.sigma)},
           {"I", ideal(v.annihilator)},
           {"quotient", v.quotient.ring->name()},
           {"filter", std::move(filter)},
           {"rcm", v.rcm()}};
  if (v.rcm()) {
    const auto& d = v.rcm_outcome().descriptor;
    Json g = Json::array();
    for (const auto& a : d.quasi_part) g.push_back(ideal(a));
    out["descriptor"] = Json{{"I", ideal(d.identity_part)}, {"G", std::move(g)}};
    out["principal"] = principal_generator(v.rcm_outcome().notion).text;
  } else {
    out["violation"] = violation(v.violation());
  }
  out["is_variety"] = v.is_variety;
  out["is_trivial"] = v.is_trivial;
  out["corpus_checked"] = Json{{"modules", v.corpus_modules}, {"bound", v.corpus_bound}};
  return out;
}

}  // namespace torsionlab::report
