#include "nerode/spec_file.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace nerode {

namespace {

enum class Tok { ident, comma, lparen, rparen, colon, arrow, equals };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;

  bool has(Tok kind) const {
    return std::any_of(tokens.begin(), tokens.end(), [kind](const Token& t) { return t.kind == kind; });
  }
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    auto special = [&](std::size_t k) {
      const char c = raw[k];
      return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')' || c == ':' ||
             c == '=' || c == '#' || (c == '-' && k + 1 < raw.size() && raw[k + 1] == '>');
    };
    while (i < raw.size()) {
      const char c = raw[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '#') {
        break;
      } else if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
        line.tokens.push_back({Tok::arrow, "->", i + 1});
        i += 2;
      } else if (c == ',' || c == '(' || c == ')' || c == ':' || c == '=') {
        const Tok kind = c == ',' ? Tok::comma : c == '(' ? Tok::lparen : c == ')' ? Tok::rparen : c == ':' ? Tok::colon : Tok::equals;
        line.tokens.push_back({kind, std::string(1, c), i + 1});
        ++i;
      } else {
        const std::size_t from = i;
        while (i < raw.size() && !special(i)) ++i;
        line.tokens.push_back({Tok::ident, std::string(raw.substr(from, i - from)), from + 1});
      }
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, std::size_t column, const std::string& what) {
  throw ParseError(line.number, column, what);
}

// Cursor over the tokens of one line.
class Reader {
 public:
  explicit Reader(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }
  const Token& peek() const {
    if (done()) fail(line_, end_column(), "unexpected end of line");
    return line_.tokens[pos_];
  }
  bool at(Tok kind) const { return !done() && line_.tokens[pos_].kind == kind; }
  const Token& expect(Tok kind, const char* what) {
    if (done() || line_.tokens[pos_].kind != kind)
      fail(line_, done() ? end_column() : line_.tokens[pos_].column, std::string("expected ") + what);
    return line_.tokens[pos_++];
  }
  std::string ident(const char* what = "a name") { return expect(Tok::ident, what).text; }
  std::size_t number(const char* what) {
    const Token& t = expect(Tok::ident, what);
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(line_, t.column, std::string("expected ") + what);
    return std::stoul(t.text);
  }
  void finish() {
    if (!done()) fail(line_, line_.tokens[pos_].column, "unexpected '" + line_.tokens[pos_].text + "'");
  }
  std::size_t column() const { return done() ? end_column() : line_.tokens[pos_].column; }
  const Line& line() const { return line_; }

 private:
  std::size_t end_column() const {
    return line_.tokens.empty() ? 1 : line_.tokens.back().column + line_.tokens.back().text.size();
  }
  const Line& line_;
  std::size_t pos_ = 0;
};

struct Located {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

Located located(const Reader& r, const Token& t) { return {t.text, r.line().number, t.column}; }

[[noreturn]] void fail_at(const Located& at, const std::string& what) { throw ParseError(at.line, at.column, what); }

// Cycles "(1 2)(3 4)" or "()" over 1-based points; reads until the next
// token that cannot continue the permutation.
std::vector<std::vector<std::size_t>> read_cycles(Reader& r) {
  std::vector<std::vector<std::size_t>> cycles;
  if (!r.at(Tok::lparen)) r.expect(Tok::lparen, "'(' starting a cycle");
  while (r.at(Tok::lparen)) {
    r.expect(Tok::lparen, "'('");
    std::vector<std::size_t> cycle;
    while (!r.at(Tok::rparen)) {
      const std::size_t col = r.column();
      const std::size_t p = r.number("a point number");
      if (p == 0) fail(r.line(), col, "points are numbered from 1");
      cycle.push_back(p - 1);
    }
    r.expect(Tok::rparen, "')'");
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

Perm cycles_to_perm(const std::vector<std::vector<std::size_t>>& cycles, std::size_t n) {
  Perm p = identity_perm(n);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n) throw InvalidInput("cycle point " + std::to_string(c[i] + 1) + " exceeds " + std::to_string(n));
      p[c[i]] = static_cast<Elem>(c[(i + 1) % c.size()]);
    }
  }
  if (!is_permutation(p)) throw InvalidInput("cycles repeat a point");
  return p;
}

struct RawGroup {
  Located name;
  std::vector<std::string> elements;
  std::vector<std::vector<Located>> rows;
  std::vector<std::pair<std::string, std::vector<std::vector<std::size_t>>>> generators;
  bool has_table = false;
};

struct RawObject {
  Located name;
  std::vector<Located> elements;
  std::vector<std::pair<Located, std::vector<std::pair<Located, Located>>>> actions;
  struct Orbit {
    Located name;
    std::size_t dim = 0;
    std::vector<std::vector<std::vector<std::size_t>>> stab;
  };
  std::vector<Orbit> orbits;
};

struct RawPattern {
  Located orbit;
  std::vector<Located> vars;
};

struct RawRule {
  RawPattern state, letter, target;
};

struct RawAutomaton {
  Located name;
  std::optional<Located> alphabet, states, init;
  std::vector<Located> final;
  bool final_seen = false;
  std::vector<RawRule> rules;
};

RawPattern read_pattern(Reader& r) {
  RawPattern p;
  p.orbit = located(r, r.expect(Tok::ident, "a name"));
  if (r.at(Tok::lparen)) {
    r.expect(Tok::lparen, "'('");
    if (!r.at(Tok::rparen)) {
      p.vars.push_back(located(r, r.expect(Tok::ident, "a variable")));
      while (r.at(Tok::comma)) {
        r.expect(Tok::comma, "','");
        p.vars.push_back(located(r, r.expect(Tok::ident, "a variable")));
      }
    }
    r.expect(Tok::rparen, "')'");
  }
  return p;
}

RawGroup read_group_header(Reader& r) {
  RawGroup g;
  g.name = located(r, r.expect(Tok::ident, "a group name"));
  r.expect(Tok::colon, "':'");
  r.finish();
  return g;
}

gset::FinGroup build_group(const RawGroup& raw) {
  if (!raw.generators.empty()) {
    if (raw.has_table) fail_at(raw.name, "group lists both a table and generators");
    std::size_t points = 1;
    for (const auto& [name, cycles] : raw.generators)
      for (const auto& c : cycles)
        for (std::size_t p : c) points = std::max(points, p + 1);
    std::vector<std::string> names;
    std::vector<Perm> perms;
    for (const auto& [name, cycles] : raw.generators) {
      names.push_back(name);
      perms.push_back(cycles_to_perm(cycles, points));
    }
    return gset::FinGroup::from_permutations(raw.name.text, points, names, perms);
  }
  if (raw.elements.empty()) fail_at(raw.name, "group has no elements");
  if (raw.rows.size() != raw.elements.size())
    fail_at(raw.name, "table has " + std::to_string(raw.rows.size()) + " rows for " +
                          std::to_string(raw.elements.size()) + " elements");
  std::vector<Elem> table;
  for (const auto& row : raw.rows) {
    if (row.size() != raw.elements.size()) fail_at(row.empty() ? raw.name : row.front(), "table row has the wrong length");
    for (const auto& cell : row) {
      auto it = std::find(raw.elements.begin(), raw.elements.end(), cell.text);
      if (it == raw.elements.end()) fail_at(cell, "unknown group element '" + cell.text + "'");
      table.push_back(static_cast<Elem>(it - raw.elements.begin()));
    }
  }
  return gset::FinGroup(raw.name.text, raw.elements, std::move(table));
}

struct RawFile {
  std::optional<Located> backend;
  std::optional<RawGroup> group;
  std::vector<RawObject> objects;
  std::optional<RawAutomaton> automaton;
  std::optional<std::pair<Located, std::vector<std::pair<Located, Located>>>> map;
};

std::vector<std::pair<Located, Located>> read_arrows(Reader& r) {
  std::vector<std::pair<Located, Located>> out;
  while (!r.done()) {
    Located from = located(r, r.expect(Tok::ident, "a name"));
    r.expect(Tok::arrow, "'->'");
    Located to = located(r, r.expect(Tok::ident, "a name"));
    out.emplace_back(std::move(from), std::move(to));
  }
  return out;
}

RawFile read_file(std::string_view text) {
  enum class Section { none, group, object, automaton };
  enum class Block { none, table, delta };
  RawFile f;
  Section section = Section::none;
  Block block = Block::none;

  for (const Line& line : lex(text)) {
    Reader r(line);
    if (!line.has(Tok::colon)) {
      if (block == Block::table) {
        std::vector<Located> row;
        while (!r.done()) row.push_back(located(r, r.expect(Tok::ident, "a group element")));
        f.group->rows.push_back(std::move(row));
      } else if (block == Block::delta) {
        RawRule rule;
        rule.state = read_pattern(r);
        r.expect(Tok::comma, "','");
        rule.letter = read_pattern(r);
        r.expect(Tok::arrow, "'->'");
        rule.target = read_pattern(r);
        r.finish();
        f.automaton->rules.push_back(std::move(rule));
      } else {
        fail(line, line.tokens.front().column, "expected a declaration");
      }
      continue;
    }
    block = Block::none;
    const Token& head = r.peek();
    const std::string keyword = r.ident("a keyword");

    if (keyword == "backend") {
      r.expect(Tok::colon, "':'");
      f.backend = located(r, r.expect(Tok::ident, "set, gset or nominal"));
      r.finish();
      section = Section::none;
    } else if (keyword == "group") {
      if (f.group) fail(line, head.column, "only one group per file");
      f.group = read_group_header(r);
      section = Section::group;
    } else if (keyword == "object") {
      RawObject o;
      o.name = located(r, r.expect(Tok::ident, "an object name"));
      r.expect(Tok::colon, "':'");
      r.finish();
      f.objects.push_back(std::move(o));
      section = Section::object;
    } else if (keyword == "automaton") {
      if (f.automaton) fail(line, head.column, "only one automaton per file");
      f.automaton.emplace();
      f.automaton->name = located(r, r.expect(Tok::ident, "an automaton name"));
      r.expect(Tok::colon, "':'");
      r.finish();
      section = Section::automaton;
    } else if (keyword == "map") {
      r.expect(Tok::colon, "':'");
      f.map.emplace(located(r, head), read_arrows(r));
      section = Section::none;
    } else if (section == Section::group && keyword == "elements") {
      r.expect(Tok::colon, "':'");
      while (!r.done()) f.group->elements.push_back(r.ident());
    } else if (section == Section::group && keyword == "table") {
      r.expect(Tok::colon, "':'");
      r.finish();
      f.group->has_table = true;
      block = Block::table;
    } else if (section == Section::group && keyword == "generators") {
      r.expect(Tok::colon, "':'");
      while (!r.done()) {
        std::string name = r.ident("a generator name");
        r.expect(Tok::equals, "'='");
        f.group->generators.emplace_back(std::move(name), read_cycles(r));
      }
    } else if (section == Section::object && keyword == "elements") {
      r.expect(Tok::colon, "':'");
      while (!r.done()) f.objects.back().elements.push_back(located(r, r.expect(Tok::ident, "an element name")));
    } else if (section == Section::object && keyword == "action") {
      Located g = located(r, r.expect(Tok::ident, "a group element"));
      r.expect(Tok::colon, "':'");
      f.objects.back().actions.emplace_back(std::move(g), read_arrows(r));
    } else if (section == Section::object && keyword == "orbit") {
      RawObject::Orbit o;
      o.name = located(r, r.expect(Tok::ident, "an orbit name"));
      r.expect(Tok::colon, "':'");
      const Token& d = r.expect(Tok::ident, "'dim'");
      if (d.text != "dim") fail(line, d.column, "expected 'dim'");
      o.dim = r.number("a dimension");
      if (!r.done()) {
        const Token& s = r.expect(Tok::ident, "'stab'");
        if (s.text != "stab") fail(line, s.column, "expected 'stab'");
        r.expect(Tok::colon, "':'");
        o.stab.push_back(read_cycles(r));
        while (r.at(Tok::comma)) {
          r.expect(Tok::comma, "','");
          o.stab.push_back(read_cycles(r));
        }
      }
      r.finish();
      f.objects.back().orbits.push_back(std::move(o));
    } else if (section == Section::automaton &&
               (keyword == "alphabet" || keyword == "states" || keyword == "init")) {
      r.expect(Tok::colon, "':'");
      Located v = located(r, r.expect(Tok::ident, "a name"));
      r.finish();
      auto& slot = keyword == "alphabet" ? f.automaton->alphabet : keyword == "states" ? f.automaton->states : f.automaton->init;
      if (slot) fail(line, head.column, "'" + keyword + "' given twice");
      slot = std::move(v);
    } else if (section == Section::automaton && keyword == "final") {
      r.expect(Tok::colon, "':'");
      f.automaton->final_seen = true;
      while (!r.done()) f.automaton->final.push_back(located(r, r.expect(Tok::ident, "a state name")));
    } else if (section == Section::automaton && keyword == "delta") {
      r.expect(Tok::colon, "':'");
      r.finish();
      block = Block::delta;
    } else {
      fail(line, head.column, "unexpected '" + keyword + "' here");
    }
  }
  return f;
}

const RawObject& find_object(const RawFile& f, const Located& name) {
  for (const auto& o : f.objects)
    if (o.name.text == name.text) return o;
  fail_at(name, "unknown object '" + name.text + "'");
}

FiniteObject build_finite_object(const RawObject& raw, Backend backend, const std::optional<gset::FinGroup>& group) {
  if (!raw.orbits.empty()) fail_at(raw.orbits.front().name, "orbit declarations need the nominal backend");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& e : raw.elements) {
    if (!seen.insert(e.text).second) fail_at(e, "duplicate element '" + e.text + "'");
    names.push_back(e.text);
  }
  auto index_of = [&](const Located& e) {
    auto it = std::find(names.begin(), names.end(), e.text);
    if (it == names.end()) fail_at(e, "'" + e.text + "' is not an element of '" + raw.name.text + "'");
    return static_cast<Elem>(it - names.begin());
  };
  if (backend == Backend::set) {
    if (!raw.actions.empty()) fail_at(raw.actions.front().first, "actions need the gset backend");
    return FiniteObject(Backend::set, std::move(names));
  }
  std::map<Elem, Perm> given;
  for (const auto& [g, arrows] : raw.actions) {
    auto ge = group->find(g.text);
    if (!ge) fail_at(g, "unknown group element '" + g.text + "'");
    if (given.count(*ge)) fail_at(g, "action of '" + g.text + "' given twice");
    Perm p = identity_perm(names.size());
    std::set<Elem> sources;
    for (const auto& [from, to] : arrows) {
      const Elem a = index_of(from);
      if (!sources.insert(a).second) fail_at(from, "'" + from.text + "' mapped twice");
      p[a] = index_of(to);
    }
    given.emplace(*ge, std::move(p));
  }
  std::vector<Perm> actions;
  if (given.empty()) {
    actions.assign(group->order(), identity_perm(names.size()));
  } else {
    try {
      actions = gset::close_action(*group, names.size(), given);
    } catch (const InvalidInput& e) {
      throw InvalidInput("object '" + raw.name.text + "': " + e.what());
    }
  }
  return gset::make_gset(*group, std::move(names), std::move(actions));
}

nominal::NominalObject build_nominal_object(const RawObject& raw) {
  if (!raw.elements.empty()) fail_at(raw.elements.front(), "nominal objects are declared by orbits");
  if (!raw.actions.empty()) fail_at(raw.actions.front().first, "nominal objects are declared by orbits");
  nominal::NominalObject obj{raw.name.text, {}};
  for (const auto& o : raw.orbits) {
    if (obj.find(o.name.text)) fail_at(o.name, "duplicate orbit '" + o.name.text + "'");
    std::vector<Perm> gens;
    for (const auto& cycles : o.stab) gens.push_back(cycles_to_perm(cycles, o.dim));
    obj.orbits.push_back(nominal::make_orbit(o.name.text, o.dim, gens));
  }
  return obj;
}

void build_plain_automaton(const RawFile& f, SpecFile& spec) {
  const RawAutomaton& ra = *f.automaton;
  const RawObject& ralpha = find_object(f, *ra.alphabet);
  const RawObject& rstates = find_object(f, *ra.states);
  Automaton& a = spec.automaton;
  a.alphabet = build_finite_object(ralpha, spec.backend, spec.group);
  a.states = build_finite_object(rstates, spec.backend, spec.group);
  auto state = [&](const Located& n) {
    auto q = a.states.find(n.text);
    if (!q) fail_at(n, "unknown state '" + n.text + "'");
    return *q;
  };
  a.init = state(*ra.init);
  a.final.assign(a.states.size(), false);
  for (const auto& n : ra.final) a.final[state(n)] = true;

  constexpr Elem unset = ~Elem{0};
  const std::size_t ns = a.alphabet.size();
  a.delta.assign(a.states.size() * ns, unset);
  for (const RawRule& rule : ra.rules) {
    for (const RawPattern* p : {&rule.state, &rule.letter, &rule.target})
      if (!p->vars.empty()) fail_at(p->orbit, "pattern variables need the nominal backend");
    const Elem q = state(rule.state.orbit);
    auto s = a.alphabet.find(rule.letter.orbit.text);
    if (!s) fail_at(rule.letter.orbit, "unknown letter '" + rule.letter.orbit.text + "'");
    const Elem target = state(rule.target.orbit);
    Elem& slot = a.delta[q * ns + *s];
    if (slot != unset && slot != target)
      throw InvalidInput("nondeterministic transition for (" + rule.state.orbit.text + ", " + rule.letter.orbit.text + ")");
    slot = target;
  }
  for (Elem q = 0; q < a.states.size(); ++q)
    for (Elem s = 0; s < ns; ++s)
      if (a.delta[q * ns + s] == unset)
        throw InvalidInput("missing transition for (" + a.states.name(q) + ", " + a.alphabet.name(s) + ")");
  validate(a);
}

void build_nominal_automaton(const RawFile& f, SpecFile& spec) {
  const RawAutomaton& ra = *f.automaton;
  nominal::NominalAutomaton& a = spec.nominal;
  a.alphabet = build_nominal_object(find_object(f, *ra.alphabet));
  a.states = build_nominal_object(find_object(f, *ra.states));
  auto orbit_in = [](const nominal::NominalObject& obj, const Located& n) {
    auto o = obj.find(n.text);
    if (!o) fail_at(n, "unknown orbit '" + n.text + "' in '" + obj.name + "'");
    return *o;
  };
  a.init = orbit_in(a.states, *ra.init);
  a.final.assign(a.states.orbits.size(), false);
  for (const auto& n : ra.final) a.final[orbit_in(a.states, n)] = true;
  auto pattern = [&](const RawPattern& p, const nominal::NominalObject& obj) {
    nominal::Pattern out{orbit_in(obj, p.orbit), {}};
    for (const auto& v : p.vars) out.vars.push_back(v.text);
    return out;
  };
  for (const RawRule& rule : ra.rules)
    a.rules.push_back({pattern(rule.state, a.states), pattern(rule.letter, a.alphabet), pattern(rule.target, a.states)});
  nominal::validate(a);
}

}  // namespace

SpecFile parse_spec(std::string_view text) {
  RawFile f = read_file(text);
  if (!f.backend) throw ParseError(1, 1, "missing 'backend:' declaration");
  SpecFile spec;
  const std::string& b = f.backend->text;
  if (b == "set") spec.backend = Backend::set;
  else if (b == "gset") spec.backend = Backend::gset;
  else if (b == "nominal") spec.backend = Backend::nominal;
  else fail_at(*f.backend, "unknown backend '" + b + "'");
  if (f.map) fail_at(f.map->first, "'map:' belongs in a homomorphism file");

  if (spec.backend == Backend::gset) {
    if (!f.group) fail_at(*f.backend, "the gset backend needs a group");
    spec.group = build_group(*f.group);
  } else if (f.group) {
    fail_at(f.group->name, "groups need the gset backend");
  }
  if (!f.automaton) throw ParseError(1, 1, "missing automaton section");
  const RawAutomaton& ra = *f.automaton;
  if (!ra.alphabet) fail_at(ra.name, "automaton has no 'alphabet:'");
  if (!ra.states) fail_at(ra.name, "automaton has no 'states:'");
  if (!ra.init) fail_at(ra.name, "automaton has no 'init:'");
  if (!ra.final_seen) fail_at(ra.name, "automaton has no 'final:'");
  if (ra.alphabet->text == ra.states->text) fail_at(*ra.states, "alphabet and states must be different objects");
  spec.automaton_name = ra.name.text;
  spec.alphabet_name = ra.alphabet->text;
  spec.states_name = ra.states->text;

  if (spec.backend == Backend::nominal) build_nominal_automaton(f, spec);
  else build_plain_automaton(f, spec);
  return spec;
}

namespace {

void write_group(std::ostringstream& out, const gset::FinGroup& g) {
  out << "group " << g.name() << ":\n  elements:";
  for (const auto& e : g.elements()) out << ' ' << e;
  out << "\n  table:\n";
  for (Elem a = 0; a < g.order(); ++a) {
    out << "   ";
    for (Elem b = 0; b < g.order(); ++b) out << ' ' << g.elements()[g.mult(a, b)];
    out << '\n';
  }
}

void write_finite_object(std::ostringstream& out, const std::string& name, const FiniteObject& x,
                         const std::optional<gset::FinGroup>& group) {
  out << "object " << name << ":\n  elements:";
  for (const auto& e : x.elements()) out << ' ' << e;
  out << '\n';
  if (!group) return;
  for (Elem g = 0; g < group->order(); ++g) {
    if (g == group->identity()) continue;
    out << "  action " << group->elements()[g] << ':';
    for (Elem e = 0; e < x.size(); ++e)
      if (x.act(g, e) != e) out << ' ' << x.name(e) << "->" << x.name(x.act(g, e));
    out << '\n';
  }
}

void write_nominal_object(std::ostringstream& out, const std::string& name, const nominal::NominalObject& x) {
  out << "object " << name << ":\n";
  for (const auto& o : x.orbits) {
    out << "  orbit " << o.name << ": dim " << o.dim;
    const auto gens = generating_subset(o.stabilizer);
    if (!gens.empty()) {
      out << " stab:";
      for (std::size_t i = 0; i < gens.size(); ++i) out << (i ? ", " : " ") << to_cycles(gens[i]);
    }
    out << '\n';
  }
}

std::string pattern_text(const nominal::NominalObject& obj, const nominal::Pattern& p) {
  std::string s = obj.orbits[p.orbit].name;
  if (p.vars.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < p.vars.size(); ++i) s += (i ? "," : "") + p.vars[i];
  return s + ')';
}

}  // namespace

std::string write_spec(const SpecFile& spec) {
  std::ostringstream out;
  out << "backend: " << backend_name(spec.backend) << '\n';
  if (spec.backend == Backend::nominal) {
    const auto& a = spec.nominal;
    write_nominal_object(out, spec.alphabet_name, a.alphabet);
    write_nominal_object(out, spec.states_name, a.states);
    out << "automaton " << spec.automaton_name << ":\n";
    out << "  alphabet: " << spec.alphabet_name << "\n  states: " << spec.states_name << '\n';
    out << "  init: " << a.states.orbits[a.init].name << "\n  final:";
    for (std::size_t o = 0; o < a.final.size(); ++o)
      if (a.final[o]) out << ' ' << a.states.orbits[o].name;
    out << "\n  delta:\n";
    for (const auto& r : a.rules)
      out << "    " << pattern_text(a.states, r.state) << ", " << pattern_text(a.alphabet, r.letter) << " -> "
          << pattern_text(a.states, r.target) << '\n';
    return out.str();
  }
  if (spec.group) write_group(out, *spec.group);
  const Automaton& a = spec.automaton;
  write_finite_object(out, spec.alphabet_name, a.alphabet, spec.group);
  write_finite_object(out, spec.states_name, a.states, spec.group);
  out << "automaton " << spec.automaton_name << ":\n";
  out << "  alphabet: " << spec.alphabet_name << "\n  states: " << spec.states_name << '\n';
  out << "  init: " << a.states.name(a.init) << "\n  final:";
  for (Elem q = 0; q < a.states.size(); ++q)
    if (a.final[q]) out << ' ' << a.states.name(q);
  out << "\n  delta:\n";
  for (Elem q = 0; q < a.states.size(); ++q)
    for (Elem s = 0; s < a.alphabet.size(); ++s)
      out << "    " << a.states.name(q) << ", " << a.alphabet.name(s) << " -> " << a.states.name(a.step(q, s)) << '\n';
  return out.str();
}

gset::GroupHom parse_hom(std::string_view text, const gset::FinGroup& target) {
  RawFile f = read_file(text);
  if (!f.group) throw ParseError(1, 1, "homomorphism file needs a source group");
  if (!f.map) throw ParseError(1, 1, "homomorphism file needs a 'map:' line");
  gset::GroupHom hom{build_group(*f.group), target, {}};
  constexpr Elem unset = ~Elem{0};
  hom.map.assign(hom.source.order(), unset);
  for (const auto& [from, to] : f.map->second) {
    auto a = hom.source.find(from.text);
    if (!a) fail_at(from, "unknown element '" + from.text + "' of '" + hom.source.name() + "'");
    auto b = target.find(to.text);
    if (!b) fail_at(to, "unknown element '" + to.text + "' of '" + target.name() + "'");
    if (hom.map[*a] != unset) fail_at(from, "'" + from.text + "' mapped twice");
    hom.map[*a] = *b;
  }
  for (Elem g = 0; g < hom.map.size(); ++g)
    if (hom.map[g] == unset) throw InvalidInput("homomorphism does not map '" + hom.source.elements()[g] + "'");
  if (auto v = gset::hom_violation(hom)) throw InvalidInput("invalid homomorphism: " + *v);
  return hom;
}

}  // namespace nerode
