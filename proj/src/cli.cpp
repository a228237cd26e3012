#include "nerode/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nerode/dot.hpp"
#include "nerode/errors.hpp"
#include "nerode/gset.hpp"
#include "nerode/monoid.hpp"
#include "nerode/spec_file.hpp"

namespace nerode::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw InvalidInput("cannot write '" + path + "'");
  o << text;
}

struct Loaded {
  std::string path;
  SpecFile spec;
};

Loaded load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return {path, parse_spec(text)};
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), e.message(), path);
  }
}

std::vector<std::string> split_words(const std::vector<std::string>& args) {
  std::vector<std::string> tokens;
  for (const auto& a : args) {
    std::istringstream in(a);
    std::string t;
    while (in >> t)
      if (t != "ε") tokens.push_back(t);
  }
  return tokens;
}

Word parse_word(const FiniteObject& alphabet, const std::vector<std::string>& tokens) {
  Word w;
  for (const auto& t : tokens) {
    auto s = alphabet.find(t);
    if (!s) throw InvalidInput("unknown letter '" + t + "'");
    w.push_back(*s);
  }
  return w;
}

// "5" is an atom of the unique one-dimensional orbit with trivial stabilizer,
// "Orb(1,2)" names an element explicitly, "Orb" a zero-dimensional orbit.
std::vector<nominal::NomElement> parse_nominal_word(const nominal::NominalObject& alphabet,
                                                    const std::vector<std::string>& tokens) {
  std::vector<nominal::NomElement> w;
  for (const auto& t : tokens) {
    const bool numeric = std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (numeric) {
      std::optional<std::uint32_t> atoms;
      for (std::uint32_t o = 0; o < alphabet.orbits.size(); ++o)
        if (alphabet.orbits[o].dim == 1) {
          if (atoms) throw InvalidInput("letter '" + t + "' is ambiguous: several one-dimensional orbits");
          atoms = o;
        }
      if (!atoms) throw InvalidInput("letter '" + t + "': the alphabet has no one-dimensional orbit");
      w.push_back(nominal::canonical(alphabet, *atoms, {static_cast<nominal::Atom>(std::stoul(t))}));
      continue;
    }
    const auto open = t.find('(');
    const std::string orbit_name = t.substr(0, open);
    auto o = alphabet.find(orbit_name);
    if (!o) throw InvalidInput("unknown letter '" + t + "'");
    std::vector<nominal::Atom> tuple;
    if (open != std::string::npos) {
      if (t.back() != ')') throw InvalidInput("malformed letter '" + t + "'");
      std::istringstream in(t.substr(open + 1, t.size() - open - 2));
      std::string part;
      while (std::getline(in, part, ',')) {
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
          throw InvalidInput("malformed atom in letter '" + t + "'");
        tuple.push_back(static_cast<nominal::Atom>(std::stoul(part)));
      }
    }
    if (tuple.size() != alphabet.orbits[*o].dim)
      throw InvalidInput("letter '" + t + "' needs " + std::to_string(alphabet.orbits[*o].dim) + " atoms");
    for (std::size_t i = 0; i < tuple.size(); ++i)
      for (std::size_t j = i + 1; j < tuple.size(); ++j)
        if (tuple[i] == tuple[j]) throw InvalidInput("letter '" + t + "' repeats an atom");
    w.push_back(nominal::canonical(alphabet, *o, tuple));
  }
  return w;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string count_change(const char* what, std::size_t before, std::size_t after) {
  std::string s = std::string(what) + ": " + std::to_string(before) + " → " + std::to_string(after);
  if (before == after) s += " (already minimal)";
  return s;
}

std::string verdict(bool dk_finite, std::size_t orbits) {
  std::string s = "Myhill-Nerode: Nerode quotient has " + std::to_string(orbits) + (orbits == 1 ? " orbit" : " orbits") +
                  ", so L is decomposition-regular\n";
  s += std::string("Myhill-Nerode: Nerode quotient is ") + (dk_finite ? "" : "not ") + "dK-finite, so L is " +
       (dk_finite ? "" : "not ") + "dK-regular\n";
  return s;
}

// Diagnostics go to stdout when the artifact went to a file.
std::ostream& notes(bool artifact_in_file, std::ostream& out, std::ostream& err) {
  return artifact_in_file ? out : err;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) out << text;
  else write_file(path, text);
}

struct MinimizeOptions {
  std::string file, out, dot, report;
  std::size_t margin = 1;
  std::size_t cap = 20000;
};

int cmd_minimize(const MinimizeOptions& o, std::ostream& out, std::ostream& err) {
  Loaded in = load(o.file);
  SpecFile result = in.spec;
  std::ostringstream report;
  std::string dot;
  if (in.spec.backend == Backend::nominal) {
    const auto& a = in.spec.nominal;
    auto m = nominal::minimize_nominal(a, o.margin);
    if (m.instance.automaton.states.size() > o.cap)
      throw ResourceLimit("pool instance has " + std::to_string(m.instance.automaton.states.size()) +
                          " states (cap " + std::to_string(o.cap) + ")");
    const auto fin = nominal::finiteness(m.min.states);
    report << count_change("orbits", a.states.orbits.size(), m.min.states.orbits.size())
           << "; dK-finite: " << yes_no(fin.dk_finite) << "; orbit-finite: " << yes_no(fin.decomposition_finite)
           << '\n';
    report << "backend: nominal\n";
    report << "pool: " << m.pool_size << " atoms (stable at " << m.pool_size + 1 << ")\n";
    report << "reachable orbits: " << m.reachable_orbits << '\n';
    report << "pool states: " << m.span.mono.target.states.size() << " → " << m.span.min.states.size() << '\n';
    report << verdict(fin.dk_finite, fin.orbit_count);
    result.nominal = m.min;
    dot = to_dot(m.min, result.automaton_name);
  } else {
    const Automaton& a = in.spec.automaton;
    if (a.states.size() > o.cap)
      throw ResourceLimit("automaton has " + std::to_string(a.states.size()) + " states (cap " +
                          std::to_string(o.cap) + ")");
    auto m = minimize(a);
    const auto before = finiteness(a.states);
    const auto after = finiteness(m.min.states);
    report << count_change("states", a.states.size(), m.min.states.size());
    if (in.spec.backend == Backend::gset) {
      report << "; " << count_change("orbits", before.orbit_count, after.orbit_count)
             << "; fixed points: " << gset::fixed_points(m.min.states).size();
    }
    report << '\n';
    report << "backend: " << backend_name(in.spec.backend) << '\n';
    report << "reachable states: " << m.mono.source.states.size() << '\n';
    report << "dK-finite: " << yes_no(after.dk_finite) << '\n';
    report << "decomposition-finite: " << yes_no(after.decomposition_finite) << '\n';
    report << verdict(after.dk_finite, after.orbit_count);
    result.automaton = m.min;
    dot = to_dot(m.min, result.automaton_name);
  }
  emit(write_spec(result), o.out, out);
  if (!o.dot.empty()) write_file(o.dot, dot);
  if (!o.report.empty()) write_file(o.report, report.str());
  else notes(!o.out.empty(), out, err) << report.str();
  return exit_ok;
}

struct SynOptions {
  std::string file, table, dot;
  std::size_t margin = 1;
  std::size_t cap = default_monoid_cap;
};

int cmd_syn(const SynOptions& o, std::ostream& out) {
  Loaded in = load(o.file);
  std::ostringstream summary;
  if (in.spec.backend == Backend::nominal) {
    auto s = nominal::nominal_syntactic_monoid(in.spec.nominal, o.margin, o.cap);
    summary << "pool: " << s.pool_size << " atoms (stable at " << s.pool_size + 1 << ")\n";
    summary << "elements over pool: " << s.pool_monoid.monoid.size() << '\n';
    summary << "orbits: " << s.orbit_count << '\n';
    for (std::size_t i = 0; i < s.orbit_count; ++i) {
      const auto& orb = s.carrier.object.orbits[i];
      summary << "  f_" << s.representatives[i] << "  dim " << orb.dim << "  stabilizer order "
              << orb.stabilizer_order() << '\n';
    }
    out << summary.str();
    if (!o.table.empty()) write_file(o.table, format_table(s.pool_monoid));
    if (!o.dot.empty()) write_file(o.dot, cayley_dot(s.pool_monoid, in.spec.automaton_name));
    return exit_ok;
  }
  LMonoid lm = syntactic_monoid(in.spec.automaton, o.cap);
  const auto labels = element_labels(lm);
  summary << "elements: " << lm.monoid.size() << '\n';
  if (in.spec.backend == Backend::gset) summary << "orbits: " << gset::orbits(lm.monoid.carrier).size() << '\n';
  for (Elem x = 0; x < lm.monoid.size(); ++x)
    summary << "  " << labels[x] << (lm.accepting[x] ? "  accepting" : "") << '\n';
  out << summary.str();
  const std::string table = format_table(lm);
  if (o.table.empty()) out << '\n' << table;
  else write_file(o.table, table);
  if (!o.dot.empty()) write_file(o.dot, cayley_dot(lm, in.spec.automaton_name));
  return exit_ok;
}

// Words of length ≤ 6, stopping before a length whose words would exceed the
// budget.
std::vector<Word> sample_words(std::size_t letters, std::size_t budget = 4096) {
  std::vector<Word> all{{}};
  std::vector<Word> layer{{}};
  for (std::size_t len = 1; len <= 6 && letters > 0; ++len) {
    if (all.size() + layer.size() * letters > budget) break;
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Elem s = 0; s < letters; ++s) {
        Word v = w;
        v.push_back(s);
        next.push_back(std::move(v));
      }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

void confirm_language(const Automaton& before, const Automaton& after, std::ostream& out) {
  const auto words = sample_words(before.alphabet.size());
  for (const Word& w : words)
    if (accepts(before, w) != accepts(after, w))
      throw std::logic_error("acceptance changed on '" + word_label(before.alphabet, w) + "'");
  std::size_t longest = words.back().size();
  out << "accepts unchanged on " << words.size() << " words of length ≤ " << longest << '\n';
}

int cmd_restrict(const std::string& file, const std::string& hom_file, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  Loaded in = load(file);
  if (in.spec.backend != Backend::gset) throw InvalidInput("restrict needs the gset backend");
  gset::GroupHom hom = [&] {
    try {
      return parse_hom(read_file(hom_file), *in.spec.group);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), e.message(), hom_file);
    }
  }();
  SpecFile result = in.spec;
  result.group = hom.source;
  result.automaton = gset::restrict_automaton(hom, in.spec.automaton);
  emit(write_spec(result), out_path, out);
  confirm_language(in.spec.automaton, result.automaton, notes(!out_path.empty(), out, err));
  return exit_ok;
}

int cmd_forget(const std::string& file, const std::string& out_path, std::ostream& out, std::ostream& err) {
  Loaded in = load(file);
  if (in.spec.backend != Backend::gset) throw InvalidInput("forget needs the gset backend");
  SpecFile result = in.spec;
  result.backend = Backend::set;
  result.group.reset();
  result.automaton = gset::forget(in.spec.automaton);
  emit(write_spec(result), out_path, out);
  confirm_language(in.spec.automaton, result.automaton, notes(!out_path.empty(), out, err));
  return exit_ok;
}

int cmd_accepts(const std::string& file, const std::vector<std::string>& word, std::ostream& out) {
  Loaded in = load(file);
  const auto tokens = split_words(word);
  bool result;
  if (in.spec.backend == Backend::nominal) result = nominal::accepts(in.spec.nominal, parse_nominal_word(in.spec.nominal.alphabet, tokens));
  else result = accepts(in.spec.automaton, parse_word(in.spec.automaton.alphabet, tokens));
  out << (result ? "true" : "false") << '\n';
  return exit_ok;
}

int cmd_equiv(const std::string& file_a, const std::string& file_b, std::size_t margin, std::ostream& out) {
  Loaded a = load(file_a);
  Loaded b = load(file_b);
  if (a.spec.backend != b.spec.backend) throw InvalidInput("files use different backends");
  if (a.spec.backend == Backend::nominal) {
    auto e = nominal::equivalent(a.spec.nominal, b.spec.nominal, margin);
    out << (e.equal ? "true" : "false") << '\n';
    if (!e.equal) {
      out << "witness:";
      if (e.witness->empty()) out << " ε";
      for (const auto& x : *e.witness) out << ' ' << nominal::element_name(a.spec.nominal.alphabet, x);
      out << '\n';
    }
    return exit_ok;
  }
  const Automaton& x = a.spec.automaton;
  const Automaton& y = b.spec.automaton;
  if (x.alphabet.elements() != y.alphabet.elements()) throw InvalidInput("alphabets differ");
  // Symmetries may differ (e.g. after forget); compare underlying languages.
  auto e = equivalent(gset::forget(x), gset::forget(y));
  out << (e.equal ? "true" : "false") << '\n';
  if (!e.equal) {
    out << "witness:";
    if (e.witness->empty()) out << " ε";
    for (Elem s : *e.witness) out << ' ' << x.alphabet.name(s);
    out << '\n';
  }
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimization and syntactic monoids for automata over finite sets, G-sets and nominal sets", "nerode"};
  app.require_subcommand(1);

  std::string file, file_b, hom_file, out_path;
  std::vector<std::string> word;
  MinimizeOptions mo;
  SynOptions so;
  std::size_t equiv_margin = 1;

  auto* validate_cmd = app.add_subcommand("validate", "check a file and print VALID");
  validate_cmd->add_option("file", file, "automaton file")->required();

  auto* minimize_cmd = app.add_subcommand("minimize", "minimal automaton in the same format");
  minimize_cmd->add_option("file", mo.file, "automaton file")->required();
  minimize_cmd->add_option("--out", mo.out, "write the automaton here instead of stdout");
  minimize_cmd->add_option("--dot", mo.dot, "write a DOT diagram");
  minimize_cmd->add_option("--report", mo.report, "write the report here");
  minimize_cmd->add_option("--pool-margin", mo.margin, "fresh atoms beyond the largest supports (nominal)");
  minimize_cmd->add_option("--cap", mo.cap, "largest (instantiated) state count");

  auto* syn_cmd = app.add_subcommand("syn", "syntactic monoid");
  syn_cmd->add_option("file", so.file, "automaton file")->required();
  syn_cmd->add_option("--table", so.table, "write the multiplication table here");
  syn_cmd->add_option("--dot", so.dot, "write the Cayley graph as DOT");
  syn_cmd->add_option("--pool-margin", so.margin, "fresh atoms beyond the largest supports (nominal)");
  syn_cmd->add_option("--cap", so.cap, "largest monoid");

  auto* restrict_cmd = app.add_subcommand("restrict", "restrict the action along a group homomorphism");
  restrict_cmd->add_option("file", file, "automaton file")->required();
  restrict_cmd->add_option("--hom", hom_file, "homomorphism file")->required();
  restrict_cmd->add_option("--out", out_path, "write the automaton here instead of stdout");

  auto* forget_cmd = app.add_subcommand("forget", "drop the action");
  forget_cmd->add_option("file", file, "automaton file")->required();
  forget_cmd->add_option("--out", out_path, "write the automaton here instead of stdout");

  auto* accepts_cmd = app.add_subcommand("accepts", "does the automaton accept the word");
  accepts_cmd->add_option("file", file, "automaton file")->required();
  accepts_cmd->add_option("word", word, "letters; nominal atoms as numbers");

  auto* equiv_cmd = app.add_subcommand("equiv", "language equality with a distinguishing word");
  equiv_cmd->add_option("file", file, "automaton file")->required();
  equiv_cmd->add_option("other", file_b, "automaton file")->required();
  equiv_cmd->add_option("--pool-margin", equiv_margin, "fresh atoms beyond the largest supports (nominal)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*validate_cmd) {
      load(file);
      out << "VALID\n";
      return exit_ok;
    }
    if (*minimize_cmd) return cmd_minimize(mo, out, err);
    if (*syn_cmd) return cmd_syn(so, out);
    if (*restrict_cmd) return cmd_restrict(file, hom_file, out_path, out, err);
    if (*forget_cmd) return cmd_forget(file, out_path, out, err);
    if (*accepts_cmd) return cmd_accepts(file, word, out);
    if (*equiv_cmd) return cmd_equiv(file, file_b, equiv_margin, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_parse;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return exit_resource;
  } catch (const InvalidInput& e) {
    err << "invalid: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_usage;
}

}  // namespace nerode::cli
