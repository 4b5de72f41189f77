#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torsionlab/builtin.hpp"
#include "torsionlab/classify.hpp"
#include "torsionlab/corpus.hpp"
#include "torsionlab/delta.hpp"
#include "torsionlab/report.hpp"
#include "torsionlab/ring_spec.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab::cli {

enum ExitCode : int { kPass = 0, kNegative = 1, kInvalid = 2, kFault = 3 };

struct Options {
  std::string ring;
  std::vector<std::string> specs;
  std::string filter;
  std::string quasi;
  std::string ident;
  std::string module = "regular";
  std::string sub;
  std::string delta;
  unsigned bound = 2;
  bool sums = false;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 200;
};

namespace detail {

using report::Json;

inline std::string join_names(const FiniteRing& ring, const std::vector<Index>& xs) {
  std::string out;
  for (Index x : xs) out += (out.empty() ? "" : ",") + ring.display(x);
  return out;
}

inline std::string show(const LeftIdeal& a) {
  return "(" + join_names(*a.ring(), a.generators()) + ") = {" + join_names(*a.ring(), a.elements().to_vector()) + "}";
}

inline std::string show(const TorsionNotion& f) {
  std::string out;
  for (const auto& a : f.members()) out += (out.empty() ? "" : "; ") + show(a);
  return "{" + out + "}";
}

inline void print_violation(std::ostream& out, const AxiomViolation& v) {
  out << "violation of axiom (" << v.axiom << ")";
  if (!v.reading.empty()) out << " [" << v.reading << " reading]";
  out << ": " << v.message << "\n";
  for (const auto& a : v.ideals) out << "  ideal " << show(a) << "\n";
  if (!v.elements.empty() && !v.ideals.empty())
    out << "  element " << join_names(*v.ideals.front().ring(), v.elements) << "\n";
  if (!v.xs.empty() && !v.ideals.empty()) {
    const auto& ring = *v.ideals.front().ring();
    out << "  X = (" << join_names(ring, v.xs) << "), Y = (" << join_names(ring, v.ys) << ")\n";
  }
  std::string list;
  for (int a : v.violated) list += (list.empty() ? "" : ",") + std::to_string(a);
  out << "  failing axioms: " << list << "\n";
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

/// Validates --filter; on failure reports the violation and returns nullopt.
inline std::optional<TorsionNotion> validated_filter(const RingPtr& ring, const Options& o, std::ostream& out) {
  if (o.filter.empty()) throw PreconditionError("--filter is required");
  auto checked = check_torsion_axioms(ring, parse_filter(ring, o.filter));
  if (auto* f = std::get_if<TorsionNotion>(&checked)) return std::move(*f);
  const auto& v = std::get<AxiomViolation>(checked);
  if (o.json)
    emit(out, Json{{"ring", ring->name()}, {"valid", false}, {"violation", report::violation(v)}});
  else
    print_violation(out, v);
  return std::nullopt;
}

inline int ring_info(const RingPtr& ring, const Options& o, std::ostream& out) {
  const auto ideals = all_left_ideals(ring);
  std::size_t two_sided = 0;
  for (const auto& a : ideals) two_sided += is_two_sided(a) ? 1 : 0;
  std::vector<std::string> elements;
  for (Index x = 0; x < ring->order(); ++x) elements.push_back(ring->display(x));
  if (o.json) {
    emit(out, Json{{"ring", ring->name()},
                   {"order", ring->order()},
                   {"commutative", ring->is_commutative()},
                   {"zero", ring->zero()},
                   {"one", ring->one()},
                   {"elements", elements},
                   {"left_ideals", ideals.size()},
                   {"two_sided_ideals", two_sided}});
    return kPass;
  }
  out << ring->name() << ": order " << ring->order() << ", "
      << (ring->is_commutative() ? "commutative" : "noncommutative") << "\n";
  out << "elements:";
  for (const auto& e : elements) out << " " << e;
  out << "\nleft ideals: " << ideals.size() << ", two-sided: " << two_sided << "\n";
  return kPass;
}

inline int ideals(const RingPtr& ring, const Options& o, std::ostream& out) {
  const auto all = all_left_ideals(ring);
  if (o.json) {
    Json list = Json::array();
    for (const auto& a : all) list.push_back(report::ideal(a));
    emit(out, Json{{"ring", ring->name()}, {"count", all.size()}, {"ideals", std::move(list)}});
    return kPass;
  }
  for (const auto& a : all) out << show(a) << (is_two_sided(a) ? "  two-sided" : "") << "\n";
  return kPass;
}

inline int torsion_check(const RingPtr& ring, const Options& o, std::ostream& out) {
  auto f = validated_filter(ring, o, out);
  if (!f) return kNegative;
  if (o.json) {
    emit(out, Json{{"ring", ring->name()}, {"valid", true}, {"members", report::notion(*f)}});
  } else {
    out << "valid torsion notion " << show(*f) << "\n";
  }
  return kPass;
}

inline int torsion_enum(const RingPtr& ring, const Options& o, std::ostream& out) {
  const auto notions = enumerate_torsion_notions(ring);
  if (o.json) {
    Json list = Json::array();
    for (const auto& f : notions)
      list.push_back(Json{{"members", report::notion(f)}, {"principal", principal_generator(f).text}});
    emit(out, Json{{"ring", ring->name()}, {"count", notions.size()}, {"notions", std::move(list)}});
    return kPass;
  }
  out << notions.size() << " torsion notion" << (notions.size() == 1 ? "" : "s") << " over " << ring->name() << "\n";
  for (const auto& f : notions) out << "  " << show(f) << "   " << principal_generator(f).text << "\n";
  return kPass;
}

inline Submodule parse_sub(const ModulePtr& m, const std::string& text) {
  std::vector<Index> gens;
  for (auto [part, pos] : torsionlab::detail::split_top_level(text, 0)) {
    if (part.find_first_not_of(' ') == std::string_view::npos) continue;
    gens.push_back(parse_module_element(*m, part));
  }
  return submodule_closure(m, std::move(gens));
}

inline int closure(const RingPtr& ring, const Options& o, std::ostream& out) {
  auto f = validated_filter(ring, o, out);
  if (!f) return kNegative;
  auto m = parse_module_spec(ring, o.module);
  auto s = parse_sub(m, o.sub);
  auto c = k_closure(*f, m, s);
  auto names = [&](const Bitset& b) {
    std::vector<std::string> v;
    b.for_each([&](Index x) { v.push_back(m->display(x)); });
    return v;
  };
  if (o.json) {
    emit(out, Json{{"ring", ring->name()},
                   {"module", m->name()},
                   {"submodule", s.elements().to_vector()},
                   {"closure", c.elements().to_vector()},
                   {"closure_names", names(c.elements())},
                   {"closed", c == s}});
    return kPass;
  }
  out << "closure of {";
  std::string sep;
  for (const auto& n : names(s.elements())) out << sep << n, sep = ", ";
  out << "} in " << m->name() << " = {";
  sep.clear();
  for (const auto& n : names(c.elements())) out << sep << n, sep = ", ";
  out << "}\n";
  return kPass;
}

inline int wep(const RingPtr& ring, const Options& o, std::ostream& out, bool module_given) {
  auto f = validated_filter(ring, o, out);
  if (!f) return kNegative;
  std::vector<ModulePtr> modules;
  if (module_given) {
    modules.push_back(parse_module_spec(ring, o.module));
  } else {
    for (auto& e : module_corpus(ring, CorpusOptions{o.bound, o.sums}))
      if (is_torsion_free(*f, *e.module)) modules.push_back(e.module);
  }
  Json failures = Json::array();
  std::ostringstream text;
  for (const auto& m : modules) {
    if (auto w = wep_check(*f, m)) {
      auto elems = [&](const Submodule& s) { return s.elements().to_vector(); };
      failures.push_back(Json{{"module", m->name()}, {"s", elems(w->s)}, {"t", elems(w->t)}});
      text << "WEP fails in " << m->name() << "\n";
    }
  }
  if (o.json)
    emit(out, Json{{"ring", ring->name()}, {"modules", modules.size()}, {"passed", failures.empty()}, {"failures", failures}});
  else
    out << text.str() << "WEP " << (failures.empty() ? "holds" : "fails") << " on " << modules.size() << " module"
        << (modules.size() == 1 ? "" : "s") << "\n";
  return failures.empty() ? kPass : kNegative;
}

inline int rcm(const RingPtr& ring, const Options& o, std::ostream& out) {
  auto f = validated_filter(ring, o, out);
  if (!f) return kNegative;
  const auto r = rcm_verify(*f, CorpusOptions{o.bound, o.sums});
  if (o.json) {
    Json j = report::rcm(r);
    j["ring"] = ring->name();
    j["bound"] = o.bound;
    emit(out, j);
  } else {
    out << "checked " << r.modules_checked << " modules (" << r.torsion_free_modules << " torsion-free): "
        << (r.all_modular ? "all relative lattices modular" : "non-modular relative lattice found") << ", "
        << (r.all_wep ? "WEP holds" : "WEP fails") << "\n";
    for (const auto& x : r.failures) out << "  " << x.kind << " failure in " << x.module << ": " << x.detail << "\n";
  }
  return r.passed() ? kPass : kNegative;
}

inline int delta_reduce(const Options& o, std::ostream& out) {
  RingPtr ring = o.ring.empty() ? nullptr : parse_ring_spec(o.ring);
  if (o.delta.empty() && !o.seed) throw PreconditionError("delta-reduce needs --delta FILE or --seed N");
  if (!o.delta.empty()) {
    const auto d = load_delta_file(o.delta, ring);
    ring = d.ring();
    std::optional<ReducedDelta> reduced;
    try {
      reduced = reduce_delta(d);
    } catch (const NotReducible& e) {
      if (o.json)
        emit(out, Json{{"ring", ring->name()}, {"reducible", false}, {"row", e.row()}, {"coefficient", e.coefficient()},
                       {"message", e.what()}});
      else
        out << e.what() << "\n";
      return kNegative;
    }
    const auto& r = *reduced;
    std::size_t agree = 0;
    const auto corpus = module_corpus(ring, CorpusOptions{o.bound});
    for (const auto& e : corpus) {
      delta_equiv_qA(*e.module, d);
      ++agree;
    }
    if (o.json) {
      Json j{{"ring", ring->name()}, {"reducible", true}};
      j.update(report::reduced(r));
      j["corpus_agreement"] = agree;
      emit(out, j);
    } else {
      for (std::size_t k = 0; k < r.rows.size(); ++k) {
        out << "E" << k << "(X,U) = " << ring->display(r.rows[k].a) << "X";
        for (std::size_t i = 0; i < r.rows[k].c.size(); ++i) out << " + " << ring->display(r.rows[k].c[i]) << "U" << i;
        out << "\n";
      }
      out << "A = " << show(r.ideal) << "\n" << Quasiidentity(r.ideal).render() << "\n"
          << "agrees with the Delta-axiom on " << agree << " corpus modules\n";
    }
    return kPass;
  }
  if (!ring) throw PreconditionError("delta-reduce --seed needs a ring spec");
  std::mt19937_64 rng(*o.seed);
  const auto corpus = module_corpus(ring, CorpusOptions{o.bound});
  std::size_t instances = 0, satisfied = 0;
  for (std::size_t k = 0; k < o.samples; ++k) {
    const auto d = random_reducible_delta(ring, rng);
    for (const auto& e : corpus) {
      satisfied += delta_equiv_qA(*e.module, d) ? 1 : 0;
      ++instances;
    }
  }
  if (o.json)
    emit(out, Json{{"ring", ring->name()}, {"seed", *o.seed}, {"axioms", o.samples}, {"instances", instances},
                   {"satisfied", satisfied}, {"agreement", true}});
  else
    out << o.samples << " random Delta-axioms over " << corpus.size() << " modules: " << instances
        << " instances, all agree with q_A (" << satisfied << " satisfied)\n";
  return kPass;
}

inline int classify_cmd(const RingPtr& ring, const Options& o, std::ostream& out) {
  std::vector<Quasiidentity> q;
  for (auto& a : parse_filter(ring, o.quasi)) q.emplace_back(std::move(a));
  std::vector<LinearIdentity> ids;
  for (auto [part, pos] : torsionlab::detail::split_top_level(o.ident, 0, ';'))
    if (part.find_first_not_of(' ') != std::string_view::npos) ids.push_back({parse_generators(*ring, part)});
  const auto v = classify(ring, std::move(q), ids, CorpusOptions{o.bound});
  if (o.json) {
    emit(out, report::classification(v));
  } else {
    out << "I = " << show(v.annihilator.as_left()) << "\n";
    out << "over " << v.quotient.ring->name() << " the induced family is {";
    std::string sep;
    for (const auto& a : v.filter) out << sep << show(a), sep = "; ";
    out << "}\n";
    if (v.rcm()) {
      out << "RCM" << (v.is_variety ? ", a variety" : ", not a variety") << (v.is_trivial ? ", trivial" : "") << "\n";
      out << "principal: " << principal_generator(v.rcm_outcome().notion).text << "\n";
    } else {
      out << "not RCM\n";
      print_violation(out, v.violation());
    }
    out << "checked against " << v.corpus_modules << " corpus modules (bound " << v.corpus_bound << ")\n";
  }
  return v.rcm() ? kPass : kNegative;
}

inline int census(const Options& o, std::ostream& out) {
  std::vector<std::string> specs;
  for (const auto& s : o.specs) {
    if (s == "builtin")
      specs.insert(specs.end(), builtin_specs().begin(), builtin_specs().end());
    else
      specs.push_back(s);
  }
  Json rings = Json::array();
  std::ostringstream text;
  bool any_invalid = false, any_failed = false;
  for (const auto& spec : specs) {
    Json entry{{"spec", spec}};
    try {
      auto ring = parse_ring_spec(spec);
      const auto notions = enumerate_torsion_notions(ring);
      entry["ring"] = ring->name();
      entry["order"] = ring->order();
      entry["commutative"] = ring->is_commutative();
      entry["notions"] = notions.size();
      text << spec << ": " << notions.size() << " notion" << (notions.size() == 1 ? "" : "s");
      const auto corpus = module_corpus(ring, CorpusOptions{o.bound, o.sums});
      Json list = Json::array();
      for (const auto& f : notions) {
        const auto r = rcm_verify(f, corpus);
        any_failed = any_failed || !r.passed();
        Json item{{"members", report::notion(f)}, {"principal", principal_generator(f).text}, {"rcm", report::rcm(r)}};
        if (ring->is_commutative()) item["collapse"] = report::collapse(commutative_collapse(f));
        list.push_back(std::move(item));
        text << (r.passed() ? ", rcm ok" : ", RCM FAILED");
      }
      entry["entries"] = std::move(list);
      text << (ring->is_commutative() ? ", collapse replayed" : "") << "\n";
    } catch (const Error& e) {
      any_invalid = true;
      entry["error"] = e.what();
      text << spec << ": error: " << e.what() << "\n";
    }
    rings.push_back(std::move(entry));
  }
  if (o.json)
    emit(out, Json{{"bound", o.bound}, {"rings", std::move(rings)}});
  else
    out << text.str();
  if (any_invalid) return kInvalid;
  return any_failed ? kNegative : kPass;
}

}  // namespace detail

/// Runs one command; argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torsion notions and relatively congruence modular quasivarieties of modules over finite rings",
               "torsionlab"};
  app.require_subcommand(1);
  Options o;
  bool module_given = false;
  auto ring_arg = [&](CLI::App* c) { c->add_option("ring", o.ring, "ring spec")->required(); };
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.json, "JSON output"); };
  auto filter_opt = [&](CLI::App* c) {
    c->add_option("--filter", o.filter, "family of left ideals, e.g. \"e11,e12;1\"")->required();
  };
  auto corpus_opts = [&](CLI::App* c) {
    c->add_option("--bound", o.bound, "module corpus: quotients of R^1..R^k")->check(CLI::Range(1u, 3u));
    c->add_flag("--sums", o.sums, "also pairwise direct sums of small corpus modules");
  };

  auto* info = app.add_subcommand("ring-info", "order, elements, ideal counts");
  ring_arg(info);
  json_flag(info);
  auto* ids = app.add_subcommand("ideals", "all left ideals");
  ring_arg(ids);
  json_flag(ids);
  auto* check = app.add_subcommand("torsion-check", "check the torsion-notion axioms for a family");
  ring_arg(check);
  filter_opt(check);
  json_flag(check);
  auto* en = app.add_subcommand("torsion-enum", "all torsion notions");
  ring_arg(en);
  json_flag(en);
  auto* cl = app.add_subcommand("closure", "relative closure of a submodule");
  ring_arg(cl);
  filter_opt(cl);
  cl->add_option("--module", o.module, "regular | R^k | R/(g,...) | table:PATH");
  cl->add_option("--sub", o.sub, "submodule generators")->required();
  json_flag(cl);
  auto* wp = app.add_subcommand("wep", "weak extension principle");
  ring_arg(wp);
  filter_opt(wp);
  wp->add_option("--module", o.module, "one module instead of the corpus");
  corpus_opts(wp);
  json_flag(wp);
  auto* rc = app.add_subcommand("rcm", "modularity of relative submodule lattices over the corpus");
  ring_arg(rc);
  filter_opt(rc);
  corpus_opts(rc);
  json_flag(rc);
  auto* dr = app.add_subcommand("delta-reduce", "reduce a Delta-axiom, or sweep random ones");
  dr->add_option("ring", o.ring, "ring spec (overrides the file)");
  dr->add_option("--delta", o.delta, "Delta-axiom JSON file");
  dr->add_option("--seed", o.seed, "random sweep seed");
  dr->add_option("--samples", o.samples, "random axioms in a sweep")->check(CLI::Range(1, 100000));
  dr->add_option("--bound", o.bound, "module corpus bound")->check(CLI::Range(1u, 3u));
  json_flag(dr);
  auto* cf = app.add_subcommand("classify", "classify the quasivariety given by --quasi and --ident");
  ring_arg(cf);
  cf->add_option("--quasi", o.quasi, "quasiidentities q_A, e.g. \"e11,e12;e22\"");
  cf->add_option("--ident", o.ident, "identities as coefficient lists, e.g. \"2,2\"");
  cf->add_option("--bound", o.bound, "module corpus bound")->check(CLI::Range(1u, 3u));
  json_flag(cf);
  auto* cs = app.add_subcommand("census", "torsion notions and RCM checks over many rings");
  cs->add_option("specs", o.specs, "ring specs, or \"builtin\"");
  corpus_opts(cs);
  json_flag(cs);

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
    module_given = wp->count("--module") > 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInvalid;
  }

  try {
    if (*dr) return detail::delta_reduce(o, out);
    if (*cs) return detail::census(o, out);
    const auto ring = parse_ring_spec(o.ring);
    if (*info) return detail::ring_info(ring, o, out);
    if (*ids) return detail::ideals(ring, o, out);
    if (*check) return detail::torsion_check(ring, o, out);
    if (*en) return detail::torsion_enum(ring, o, out);
    if (*cl) return detail::closure(ring, o, out);
    if (*wp) return detail::wep(ring, o, out, module_given);
    if (*rc) return detail::rcm(ring, o, out);
    if (*cf) return detail::classify_cmd(ring, o, out);
  } catch (const InternalFault& e) {
    err << "internal fault: " << e.what() << "\n";
    return kFault;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace torsionlab::cli
