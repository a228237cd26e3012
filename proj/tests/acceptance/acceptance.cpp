// One line per acceptance criterion: PASS/FAIL, name, timing and a detail.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "data.hpp"
#include "generators.hpp"
#include "nerode/cli.hpp"

using namespace nerode;
using namespace nerode::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    } else if (!ok) {
      detail += "; " + what;
    }
  }
};

std::vector<Word> all_words_upto(std::size_t letters, std::size_t len) { return words_below(letters, len + 1); }

std::size_t orbit_count(const Automaton& a) { return finiteness(a.states).orbit_count; }

// Cheap language fingerprint for grouping candidate same-language pairs.
std::vector<bool> fingerprint(const Automaton& a) {
  std::vector<bool> f;
  for (const Word& w : words_below(a.alphabet.size(), 5)) f.push_back(accepts(a, w));
  return f;
}

std::vector<bool> fingerprint(const nominal::NominalAutomaton& a) {
  std::vector<bool> f;
  for (const auto& w : nominal_words_below(5)) f.push_back(nominal::accepts(a, w));
  return f;
}

using Shape = std::tuple<std::vector<std::pair<std::size_t, std::size_t>>, std::uint32_t, std::vector<bool>, std::size_t>;

Shape shape(const nominal::NominalAutomaton& a) {
  return {nominal::orbit_signature(a.states), a.init, a.final, a.rules.size()};
}

// --- criterion 1 ---

Outcome first_last_end_to_end() {
  Outcome o;
  const SpecFile spec = load_data("first_last_z2.aut");
  const Automaton& a = spec.automaton;
  o.require(a.states.size() == 9, "input has " + std::to_string(a.states.size()) + " states");
  for (const Word& w : all_words_upto(2, 5))
    if (accepts(a, w) != (w.size() >= 2 && w.front() != w.back())) {
      o.require(false, "input disagrees with the membership oracle on " + word_label(a.alphabet, w));
      break;
    }
  const Minimization m = minimize(a);
  o.require(m.min.states.size() == 5, "minimal automaton has " + std::to_string(m.min.states.size()) + " states");
  const auto fixed = gset::fixed_points(m.min.states);
  o.require(fixed.size() == 1, std::to_string(fixed.size()) + " fixed points");
  o.require(gset::orbits(m.min.states).size() == 3, std::to_string(gset::orbits(m.min.states).size()) + " orbits");

  std::ostringstream out, err;
  const auto table_path = std::filesystem::temp_directory_path() / "nerode_acceptance_table.txt";
  const int code = cli::run_cli({"syn", data_path("first_last_z2.aut"), "--table", table_path.string()}, out, err);
  o.require(code == 0, "syn exited with " + std::to_string(code));
  o.require(out.str().rfind("elements: 5\n", 0) == 0, "syn did not report 5 elements");
  const LMonoid syn = syntactic_monoid(a);
  std::ifstream tin(table_path);
  std::stringstream tbuf;
  tbuf << tin.rdbuf();
  o.require(tbuf.str() == format_table(syn), "syn table file differs from the monoid");

  // reference table, row · column
  const std::vector<std::string> order{"ε", "a", "aā", "ā", "āa"};
  const std::map<std::string, std::vector<std::string>> reference{
      {"ε", {"ε", "a", "aā", "ā", "āa"}},  {"a", {"a", "a", "aā", "aā", "a"}},
      {"aā", {"aā", "a", "aā", "aā", "a"}}, {"ā", {"ā", "āa", "ā", "ā", "āa"}},
      {"āa", {"āa", "āa", "ā", "āa", "āa"}}};
  const auto labels = element_labels(syn);
  std::map<std::string, Elem> by_label;
  for (Elem x = 0; x < labels.size(); ++x) by_label[labels[x]] = x;
  o.require(syn.monoid.size() == 5, "monoid has " + std::to_string(syn.monoid.size()) + " elements");
  std::size_t matches = 0;
  std::string mismatches;
  for (const auto& r : order)
    for (std::size_t c = 0; c < order.size(); ++c) {
      if (!by_label.count(r) || !by_label.count(order[c])) continue;
      const std::string got = labels[syn.monoid.mult(by_label[r], by_label[order[c]])];
      if (got == reference.at(r)[c]) ++matches;
      else mismatches += " " + r + "·" + order[c] + " = " + got + " (table: " + reference.at(r)[c] + ")";
    }
  o.require(matches == 25, std::to_string(matches) + "/25 products match the reference table;" + mismatches);
  return o;
}

// --- criterion 2 ---

Outcome first_repeats_end_to_end() {
  Outcome o;
  const nominal::NominalAutomaton a = load_data("first_repeats.aut").nominal;
  const auto m = nominal::minimize_nominal(a);
  o.require(m.min.states.orbits.size() == 3, std::to_string(m.min.states.orbits.size()) + " orbits");
  o.require(shape(m.min) == shape(a) && nominal::equivalent(a, m.min).equal, "minimal automaton differs from the input");
  o.require(m.min.states.orbits[m.min.init].dim == 0, "initial orbit is not zero-dimensional");
  std::size_t finals = 0;
  for (std::uint32_t q = 0; q < m.min.final.size(); ++q)
    if (m.min.final[q]) {
      ++finals;
      o.require(m.min.states.orbits[q].dim == 0, "final orbit has dimension " + std::to_string(m.min.states.orbits[q].dim));
    }
  o.require(finals == 1, std::to_string(finals) + " final orbits");
  o.require(!nominal::is_dk_finite(m.min.states), "states reported dK-finite");
  o.require(nominal::finiteness(m.min.states).decomposition_finite, "states reported not orbit-finite");
  try {
    const auto syn = nominal::nominal_syntactic_monoid(a);
    o.require(syn.orbit_count == 4, "syntactic monoid has " + std::to_string(syn.orbit_count) + " orbits");
  } catch (const ResourceLimit& e) {
    o.require(false, std::string("syntactic monoid: ") + e.what());
  }
  return o;
}

// --- criterion 3 ---

template <class Gen>
void myhill_nerode_finite(Outcome& o, const std::string& backend, Gen gen, std::size_t count) {
  std::vector<Automaton> corpus;
  Rng rng(1000 + count);
  for (std::size_t i = 0; i < count; ++i) {
    const Automaton a = gen(rng);
    corpus.push_back(a);
    const Automaton b = blowup(a, companion(rng, a, 3));
    if (b.states.size() <= 12 && (backend == "set" || orbit_count(b) <= 4)) corpus.push_back(b);
  }
  std::vector<Automaton> mins;
  for (const Automaton& a : corpus) {
    const Minimization m = minimize(a);
    const std::size_t n = reachable(a).sub.states.size() + m.min.states.size();
    o.require(agree_below(a, m.min, n), backend + ": minimization changed the language");
    const Automaton twice = minimize(m.min).min;
    o.require(twice == m.min || find_isomorphism(twice, m.min).has_value(), backend + ": minimize is not idempotent");
    mins.push_back(m.min);
  }
  std::map<std::pair<std::vector<std::string>, std::vector<bool>>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    groups[{corpus[i].alphabet.elements(), fingerprint(corpus[i])}].push_back(i);
  std::size_t pairs = 0;
  for (const auto& [key, members] : groups)
    for (std::size_t i : members)
      for (std::size_t j : members) {
        if (!corpus[i].alphabet.shares_symmetry_with(corpus[j].alphabet) ||
            corpus[i].alphabet.symmetry() != corpus[j].alphabet.symmetry())
          continue;
        if (!equivalent(corpus[i], corpus[j]).equal) continue;
        ++pairs;
        const Automaton rb = reachable(corpus[j]).sub;
        o.require(mins[i].states.size() <= rb.states.size(), backend + ": a smaller automaton for the same language");
        o.require(orbit_count(mins[i]) <= orbit_count(rb), backend + ": fewer orbits for the same language");
      }
  o.detail += (o.detail.empty() ? "" : ", ") + backend + " " + std::to_string(corpus.size()) + " automata/" +
              std::to_string(pairs) + " pairs";
}

Outcome myhill_nerode_suite() {
  Outcome o;
  myhill_nerode_finite(o, "set", [](Rng& rng) { return random_set_automaton(rng, 12); }, 200);
  myhill_nerode_finite(
      o, "gset", [](Rng& rng) { return random_gset_automaton(rng, uniform(rng, 0, 1) ? z4() : z2(), 4, 12); }, 200);

  Rng rng(2024);
  std::vector<nominal::NominalAutomaton> corpus;
  for (int i = 0; i < 200; ++i) {
    const auto a = random_nominal_automaton(rng);
    corpus.push_back(a);
    if (2 * a.states.orbits.size() <= 4) corpus.push_back(nominal_blowup(a));
  }
  std::vector<nominal::NominalAutomaton> mins;
  std::vector<std::size_t> reach;
  for (const auto& a : corpus) {
    const auto m = nominal::minimize_nominal(a);
    reach.push_back(m.reachable_orbits);
    const std::size_t n = a.states.orbits.size() + m.min.states.orbits.size();
    bool same = true;
    for (const auto& w : nominal_words_below(n)) same = same && nominal::accepts(a, w) == nominal::accepts(m.min, w);
    const auto pool = nominal::make_pool(a.states.max_dim() + m.min.states.max_dim() + 1);
    const auto pa = nominal::instantiate(a, pool), pm = nominal::instantiate(m.min, pool);
    same = same && agree_below(pa.automaton, pm.automaton, pa.automaton.states.size() + pm.automaton.states.size());
    o.require(same, "nominal: minimization changed the language");
    o.require(shape(nominal::minimize_nominal(m.min).min) == shape(m.min), "nominal: minimize is not idempotent");
    mins.push_back(m.min);
  }
  std::map<std::vector<bool>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) groups[fingerprint(corpus[i])].push_back(i);
  std::size_t pairs = 0;
  for (const auto& [key, members] : groups)
    for (std::size_t i : members)
      for (std::size_t j : members) {
        if (!nominal::equivalent(corpus[i], corpus[j]).equal) continue;
        ++pairs;
        o.require(mins[i].states.orbits.size() <= reach[j], "nominal: fewer orbits for the same language");
      }
  o.detail += ", nominal " + std::to_string(corpus.size()) + " automata/" + std::to_string(pairs) + " pairs";
  return o;
}

// --- criterion 4 ---

Outcome monoid_suite() {
  Outcome o;
  Rng rng(77);
  std::size_t divisions = 0, automata = 0;
  auto check = [&](const Automaton& input) {
    ++automata;
    const Automaton a = reachable(input).sub;
    const LMonoid t = transition_monoid(a);
    std::set<Elem> hit;
    for (Elem f = 0; f < t.monoid.size(); ++f) hit.insert(run(a, t.monoid.witness[f]));
    o.require(hit.size() == a.states.size(), "evaluation at init is not onto");
    const LMonoid syn = syntactic_monoid(a);
    if (t.monoid.size() <= 12) {
      ++divisions;
      o.require(monoid_divides(syn.monoid, t.monoid).has_value(), "syntactic monoid does not divide a transition monoid");
    }
    o.require(isomorphic_l_monoids(transition_monoid(monoid_to_automaton(t)), t), "Cayley round trip is not isomorphic");
    o.require(isomorphic_l_monoids(transition_monoid(monoid_to_automaton(syn)), syn),
              "Cayley round trip of the syntactic monoid is not isomorphic");
  };
  for (int i = 0; i < 200; ++i) check(random_set_automaton(rng, 5, 2));
  for (int i = 0; i < 100; ++i) check(random_gset_automaton(rng, i % 2 ? z4() : z2(), 3, 6));
  check(load_data("first_last_z2.aut").automaton);
  check(load_data("ends_in_a.aut").automaton);
  o.detail += std::to_string(automata) + " automata, " + std::to_string(divisions) + " divisions";
  return o;
}

// --- criterion 5 ---

Outcome lifting_suite() {
  Outcome o;
  Rng rng(55);
  const gset::GroupHom to_z2{z4(), z2(), {0, 1, 0, 1}};
  const gset::GroupHom doubling{z4(), z4(), {0, 2, 0, 2}};
  std::size_t words = 0;
  for (int i = 0; i < 100; ++i) {
    const bool four = i % 2 == 1;
    const auto g = four ? z4() : z2();
    const Automaton a = random_gset_automaton(rng, g);
    const Automaton forgotten = gset::forget(a);
    const Automaton lifted = gset::restrict_automaton(four ? doubling : to_z2, a);
    const Automaton classical = gset::restrict_automaton({gset::FinGroup::trivial(), g, {g.identity()}}, a);
    o.require(!automaton_violation(lifted), "restriction is not a valid automaton");
    for (const Word& w : all_words_upto(a.alphabet.size(), 6)) {
      ++words;
      const bool x = accepts(a, w);
      if (accepts(forgotten, w) != x || accepts(lifted, w) != x || accepts(classical, w) != x) {
        o.require(false, "acceptance changed on " + word_label(a.alphabet, w));
        break;
      }
    }
    o.require(find_isomorphism(gset::forget(minimize(a).min), minimize(forgotten).min).has_value(),
              "forget and minimize do not commute");
  }
  o.detail += "100 automata, " + std::to_string(words) + " words";
  return o;
}

// --- criterion 6 ---

Outcome stability_suite() {
  Outcome o;
  Rng rng(66);
  std::vector<nominal::NominalAutomaton> corpus{load_data("first_repeats.aut").nominal};
  for (int i = 0; i < 100; ++i) corpus.push_back(random_nominal_automaton(rng));
  std::vector<nominal::NominalObject> objects{atoms_object(),
                                              {"P", {nominal::make_orbit("D", 2), nominal::make_orbit("U", 2, {Perm{1, 0}})}},
                                              {"T", {nominal::make_orbit("C3", 3, {Perm{1, 2, 0}}),
                                                     nominal::make_orbit("S3", 3, {Perm{1, 2, 0}, Perm{1, 0, 2}})}}};
  std::size_t pairs = 0;
  for (const auto& a : corpus) {
    objects.push_back(a.states);
    const auto m1 = nominal::minimize_nominal(a, 1), m2 = nominal::minimize_nominal(a, 2);
    o.require(shape(m1.min) == shape(m2.min), "minimization differs between B and B+1");
    const auto p1 = nominal::product(a.states, a.alphabet, 1), p2 = nominal::product(a.states, a.alphabet, 2);
    o.require(nominal::orbit_signature(p1.object) == nominal::orbit_signature(p2.object), "product differs between B and B+1");
  }
  for (const auto& x : objects) {
    const std::size_t b = x.max_dim() + 1;
    for (std::size_t size : {b, b + 1}) {
      const auto pool = nominal::make_pool(size);
      const auto inst = nominal::instantiate(x, pool);
      const auto back = nominal::abstract(inst.object, pool, inst.upper_support, x.name, "o");
      o.require(nominal::orbit_signature(back.object) == nominal::orbit_signature(x),
                "abstraction differs from the object over " + std::to_string(size) + " atoms");
      // canonical equality against the stabilizer relation on raw tuples
      for (std::uint32_t k = 0; k < x.orbits.size(); ++k) {
        const std::size_t d = x.orbits[k].dim;
        std::vector<std::vector<nominal::Atom>> tuples;
        std::vector<nominal::Atom> t(d);
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
          if (i == d) {
            tuples.push_back(t);
            return;
          }
          for (nominal::Atom v : pool)
            if (std::find(t.begin(), t.begin() + i, v) == t.begin() + i) {
              t[i] = v;
              fill(i + 1);
            }
        };
        fill(0);
        for (const auto& s : tuples)
          for (const auto& u : tuples) {
            ++pairs;
            bool related = false;
            for (const Perm& pi : x.orbits[k].stabilizer) {
              bool same = true;
              for (std::size_t i = 0; i < d; ++i) same = same && s[pi[i]] == u[i];
              related = related || same;
            }
            if ((nominal::canonical(x, k, s) == nominal::canonical(x, k, u)) != related)
              o.require(false, "canonical equality disagrees with the stabilizer relation in " + x.orbits[k].name);
          }
      }
      // one pool orbit per declared orbit
      const auto pool_orbits = gset::orbits(inst.object);
      for (const auto& orbit : pool_orbits)
        for (Elem e : orbit)
          o.require(inst.elements[e].orbit == inst.elements[orbit.front()].orbit, "pool orbit mixes declared orbits");
      o.require(pool_orbits.size() == x.orbits.size(), "pool orbit count differs from the declared orbits");
    }
  }
  o.detail += std::to_string(corpus.size()) + " automata, " + std::to_string(objects.size()) + " objects, " +
              std::to_string(pairs) + " tuple pairs";
  return o;
}

// --- criterion 7 ---

Outcome determinism_suite() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "nerode_acceptance";
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  auto run_twice = [&](const std::string& label, std::function<std::vector<std::string>(const std::string&)> args,
                       const std::vector<std::string>& artifacts) {
    std::string first;
    for (int i = 0; i < 2; ++i) {
      const std::string tag = (dir / (label + std::to_string(i))).string();
      std::ostringstream out, err;
      const int code = cli::run_cli(args(tag), out, err);
      std::string all = std::to_string(code) + "\n" + out.str() + "\n" + err.str();
      for (const auto& ext : artifacts) all += "\n" + slurp(tag + ext);
      if (i == 0) first = all;
      else o.require(all == first, label + " differs between runs");
    }
  };
  const std::string fl = data_path("first_last_z2.aut"), fr = data_path("first_repeats.aut");
  run_twice("validate", [&](const std::string&) { return std::vector<std::string>{"validate", fl}; }, {});
  for (const auto& [label, file] : {std::pair{"min_fl", fl}, {"min_fr", fr}, {"min_ea", data_path("ends_in_a.aut")}})
    run_twice(label,
              [file = file](const std::string& t) {
                return std::vector<std::string>{"minimize", file, "--out", t + ".aut", "--dot", t + ".dot", "--report", t + ".txt"};
              },
              {".aut", ".dot", ".txt"});
  run_twice("syn_fl", [&](const std::string& t) { return std::vector<std::string>{"syn", fl, "--table", t + ".txt", "--dot", t + ".dot"}; },
            {".txt", ".dot"});
  run_twice("syn_fr", [&](const std::string&) { return std::vector<std::string>{"syn", fr}; }, {});
  run_twice("restrict",
            [&](const std::string& t) {
              return std::vector<std::string>{"restrict", fl, "--hom", data_path("z4_to_z2.hom"), "--out", t + ".aut"};
            },
            {".aut"});
  run_twice("forget", [&](const std::string& t) { return std::vector<std::string>{"forget", fl, "--out", t + ".aut"}; }, {".aut"});
  run_twice("accepts", [&](const std::string&) { return std::vector<std::string>{"accepts", fr, "5 7 5"}; }, {});
  run_twice("equiv", [&](const std::string&) { return std::vector<std::string>{"equiv", fl, fl}; }, {});
  o.detail = "10 commands";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "Z/2 first-differs-from-last: 9 -> 5 states, 1 fixed point, 3 orbits, monoid table", 1.0, first_last_end_to_end},
      {2, "nominal first-letter-repeats: self-minimal, 3 orbits, monoid with 4 orbits", 5.0, first_repeats_end_to_end},
      {3, "Myhill-Nerode properties on random automata per backend", 0, myhill_nerode_suite},
      {4, "transition and syntactic monoids: surjectivity, divisibility, round trip", 0, monoid_suite},
      {5, "restriction and forgetting preserve languages", 0, lifting_suite},
      {6, "nominal pool stability and canonical forms", 0, stability_suite},
      {7, "byte-identical command outputs", 0, determinism_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds)
      o.require(false, "took " + std::to_string(seconds) + " s");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " (" << seconds << " s)";
    if (!o.detail.empty()) line << " -- " << o.detail;
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
