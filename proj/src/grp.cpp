#include "twisted/grp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace twisted::grp {
namespace {

constexpr std::size_t kMaxFiniteOrder = 4096;

int mod(long long a, int n) {
  const long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Appends one Z2*Z3 syllable, merging with the tail.
void push_syllable(std::vector<int>& w, int y) {
  if (w.empty()) {
    w.push_back(y);
    return;
  }
  const int last = w.back();
  if (last == 0 && y == 0) {
    w.pop_back();
  } else if (last != 0 && y != 0) {
    w.pop_back();
    const int e = (last + y) % 3;
    if (e != 0) w.push_back(e);
  } else {
    w.push_back(y);
  }
}

void push_letter(std::vector<int>& w, int x) {
  if (!w.empty() && w.back() == -x) {
    w.pop_back();
  } else {
    w.push_back(x);
  }
}

// Rewrites unicode superscripts (a⁻¹, t²) as ^-1, ^2 and the middle dot as a space.
std::string ascii_word(std::string_view in) {
  std::string out;
  std::string sup;
  auto flush = [&] {
    if (!sup.empty()) {
      out += '^';
      out += sup;
      sup.clear();
    }
  };
  for (std::size_t i = 0; i < in.size();) {
    const auto c0 = static_cast<unsigned char>(in[i]);
    if (c0 == 0xC2 && i + 1 < in.size()) {
      const auto c1 = static_cast<unsigned char>(in[i + 1]);
      if (c1 == 0xB9) { sup += '1'; i += 2; continue; }
      if (c1 == 0xB2) { sup += '2'; i += 2; continue; }
      if (c1 == 0xB3) { sup += '3'; i += 2; continue; }
      if (c1 == 0xB7) { flush(); out += ' '; i += 2; continue; }
    }
    if (c0 == 0xE2 && i + 2 < in.size() && static_cast<unsigned char>(in[i + 1]) == 0x81) {
      const auto c2 = static_cast<unsigned char>(in[i + 2]);
      if (c2 == 0xBB) { sup += '-'; i += 3; continue; }
      if (c2 == 0xB0) { sup += '0'; i += 3; continue; }
      if (c2 >= 0xB4 && c2 <= 0xB9) { sup += static_cast<char>('4' + (c2 - 0xB4)); i += 3; continue; }
    }
    flush();
    out += in[i];
    ++i;
  }
  flush();
  return out;
}

struct Token {
  enum Kind { Symbol, Integer, Tuple } kind;
  char symbol = 0;
  std::vector<long long> values;
  long long exponent = 1;
};

long long read_int(const std::string& s, std::size_t& i) {
  std::size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
    throw std::invalid_argument("malformed integer in word at offset " + std::to_string(start));
  }
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return std::stoll(s.substr(start, i - start));
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '+') {
      ++i;
      continue;
    }
    Token tok;
    tok.kind = Token::Symbol;
    if (c == '(') {
      tok.kind = Token::Tuple;
      ++i;
      while (true) {
        while (i < s.size() && s[i] == ' ') ++i;
        tok.values.push_back(read_int(s, i));
        while (i < s.size() && s[i] == ' ') ++i;
        if (i < s.size() && s[i] == ',') {
          ++i;
          continue;
        }
        if (i < s.size() && s[i] == ')') {
          ++i;
          break;
        }
        throw std::invalid_argument("unterminated tuple in word");
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      tok.kind = Token::Integer;
      tok.values.push_back(read_int(s, i));
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      tok.symbol = c;
      ++i;
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in word");
    }
    if (i < s.size() && s[i] == '^') {
      ++i;
      tok.exponent = read_int(s, i);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

}  // namespace

std::string_view length_name(LengthTag tag) {
  switch (tag) {
    case LengthTag::Word: return "word";
    case LengthTag::L1: return "l1";
    case LengthTag::L2: return "l2";
    case LengthTag::L2Squared: return "l2sq";
    case LengthTag::Block: return "block";
  }
  return "word";
}

LengthTag parse_length(std::string_view name) {
  if (name == "word") return LengthTag::Word;
  if (name == "l1") return LengthTag::L1;
  if (name == "l2") return LengthTag::L2;
  if (name == "l2sq") return LengthTag::L2Squared;
  if (name == "block") return LengthTag::Block;
  throw std::invalid_argument("unknown length function '" + std::string(name) + "'");
}

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  switch (spec_.family) {
    case Family::Cyclic:
      need(spec_.params.size() == 1 && spec_.params[0] >= 1, "cyclic group needs n >= 1");
      break;
    case Family::Dihedral:
      need(spec_.params.size() == 1 && spec_.params[0] >= 1, "dihedral group needs n >= 1");
      break;
    case Family::ProductOfFinite:
      need(!spec_.params.empty(), "product group needs at least one modulus");
      for (int m : spec_.params) need(m >= 1, "product moduli must be >= 1");
      break;
    case Family::Zd:
      need(spec_.params.size() == 1 && spec_.params[0] >= 1 && spec_.params[0] <= 6,
           "Z^d needs 1 <= d <= 6");
      break;
    case Family::FreeF2:
    case Family::FreeProductZ2Z3:
      spec_.params.clear();
      break;
  }
  if (!is_finite()) return;

  std::size_t n = 1;
  if (spec_.family == Family::Dihedral) {
    n = 2 * static_cast<std::size_t>(spec_.params[0]);
  } else {
    for (int m : spec_.params) n *= static_cast<std::size_t>(m);
  }
  need(n <= kMaxFiniteOrder, "finite group too large to enumerate");

  if (spec_.family == Family::Dihedral) {
    for (int x = 0; x < 2; ++x)
      for (int k = 0; k < spec_.params[0]; ++k) elements_.push_back({{k, x}});
  } else {
    std::vector<int> code(spec_.params.size(), 0);
    for (std::size_t c = 0; c < n; ++c) {
      elements_.push_back({code});
      for (std::size_t j = code.size(); j-- > 0;) {
        if (++code[j] < spec_.params[j]) break;
        code[j] = 0;
      }
    }
  }
  std::sort(elements_.begin(), elements_.end());

  const auto gens = generators();
  std::deque<GroupElement> queue{identity()};
  word_length_[identity()] = 0;
  while (!queue.empty()) {
    const GroupElement g = queue.front();
    queue.pop_front();
    const int d = word_length_[g];
    for (const auto& s : gens) {
      GroupElement h = mul(g, s);
      if (word_length_.emplace(h, d + 1).second) {
        diameter_ = std::max(diameter_, d + 1);
        queue.push_back(std::move(h));
      }
    }
  }
}

std::string Group::name() const {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "x" : "") + std::to_string(v[i]);
    return s;
  };
  switch (spec_.family) {
    case Family::Cyclic: return "Z" + std::to_string(spec_.params[0]);
    case Family::Dihedral: return "D" + std::to_string(spec_.params[0]);
    case Family::ProductOfFinite: return "Z(" + join(spec_.params) + ")";
    case Family::Zd: return "Z^" + std::to_string(spec_.params[0]);
    case Family::FreeF2: return "F2";
    case Family::FreeProductZ2Z3: return "Z2*Z3";
  }
  return "?";
}

bool Group::is_finite() const {
  return spec_.family == Family::Cyclic || spec_.family == Family::Dihedral ||
         spec_.family == Family::ProductOfFinite;
}

std::size_t Group::order() const {
  if (!is_finite()) throw std::logic_error("order() on an infinite group");
  return elements_.size();
}

GroupElement Group::identity() const {
  switch (spec_.family) {
    case Family::Cyclic: return {{0}};
    case Family::Dihedral: return {{0, 0}};
    case Family::ProductOfFinite: return {std::vector<int>(spec_.params.size(), 0)};
    case Family::Zd: return {std::vector<int>(static_cast<std::size_t>(spec_.params[0]), 0)};
    case Family::FreeF2:
    case Family::FreeProductZ2Z3: return {};
  }
  return {};
}

GroupElement Group::mul(const GroupElement& a, const GroupElement& b) const {
  switch (spec_.family) {
    case Family::Cyclic:
      return {{mod(static_cast<long long>(a.code[0]) + b.code[0], spec_.params[0])}};
    case Family::Dihedral: {
      const int n = spec_.params[0];
      const long long shift = a.code[1] ? -static_cast<long long>(b.code[0]) : b.code[0];
      return {{mod(a.code[0] + shift, n), (a.code[1] + b.code[1]) % 2}};
    }
    case Family::ProductOfFinite: {
      GroupElement r = a;
      for (std::size_t i = 0; i < r.code.size(); ++i)
        r.code[i] = mod(static_cast<long long>(a.code[i]) + b.code[i], spec_.params[i]);
      return r;
    }
    case Family::Zd: {
      GroupElement r = a;
      for (std::size_t i = 0; i < r.code.size(); ++i) r.code[i] += b.code[i];
      return r;
    }
    case Family::FreeF2: {
      GroupElement r = a;
      for (int x : b.code) push_letter(r.code, x);
      return r;
    }
    case Family::FreeProductZ2Z3: {
      GroupElement r = a;
      for (int y : b.code) push_syllable(r.code, y);
      return r;
    }
  }
  return a;
}

GroupElement Group::inverse(const GroupElement& a) const {
  switch (spec_.family) {
    case Family::Cyclic: return {{mod(-static_cast<long long>(a.code[0]), spec_.params[0])}};
    case Family::Dihedral:
      if (a.code[1] == 0) return {{mod(-static_cast<long long>(a.code[0]), spec_.params[0]), 0}};
      return a;
    case Family::ProductOfFinite: {
      GroupElement r = a;
      for (std::size_t i = 0; i < r.code.size(); ++i)
        r.code[i] = mod(-static_cast<long long>(a.code[i]), spec_.params[i]);
      return r;
    }
    case Family::Zd: {
      GroupElement r = a;
      for (int& x : r.code) x = -x;
      return r;
    }
    case Family::FreeF2: {
      GroupElement r;
      for (auto it = a.code.rbegin(); it != a.code.rend(); ++it) r.code.push_back(-*it);
      return r;
    }
    case Family::FreeProductZ2Z3: {
      GroupElement r;
      for (auto it = a.code.rbegin(); it != a.code.rend(); ++it) r.code.push_back(*it == 0 ? 0 : 3 - *it);
      return r;
    }
  }
  return a;
}

const std::vector<GroupElement>& Group::elements() const {
  if (!is_finite()) throw std::logic_error("elements() on an infinite group; use ball()");
  return elements_;
}

std::vector<GroupElement> Group::generators() const {
  std::set<GroupElement> gens;
  for (const auto& g : basic_generators()) {
    if (is_identity(g)) continue;
    gens.insert(g);
    gens.insert(inverse(g));
  }
  if (spec_.family == Family::FreeProductZ2Z3) gens.insert(GroupElement{{2}});
  return {gens.begin(), gens.end()};
}

std::vector<GroupElement> Group::basic_generators() const {
  switch (spec_.family) {
    case Family::Cyclic: return {{{spec_.params[0] > 1 ? 1 : 0}}};
    case Family::Dihedral: return {{{spec_.params[0] > 1 ? 1 : 0, 0}}, {{0, 1}}};
    case Family::ProductOfFinite:
    case Family::Zd: {
      std::vector<GroupElement> out;
      const std::size_t k = spec_.family == Family::Zd ? static_cast<std::size_t>(spec_.params[0])
                                                      : spec_.params.size();
      for (std::size_t i = 0; i < k; ++i) {
        GroupElement e = identity();
        e.code[i] = (spec_.family == Family::Zd || spec_.params[i] > 1) ? 1 : 0;
        out.push_back(std::move(e));
      }
      return out;
    }
    case Family::FreeF2: return {{{1}}, {{2}}};
    case Family::FreeProductZ2Z3: return {{{0}}, {{1}}};
  }
  return {};
}

std::vector<std::pair<int, int>> Group::factorization(const GroupElement& g) const {
  std::vector<std::pair<int, int>> out;
  auto push = [&](int idx, int e) {
    if (e == 0) return;
    if (!out.empty() && out.back().first == idx) {
      out.back().second += e;
    } else {
      out.emplace_back(idx, e);
    }
  };
  switch (spec_.family) {
    case Family::Cyclic: push(0, g.code[0]); break;
    case Family::Dihedral: push(0, g.code[0]); push(1, g.code[1]); break;
    case Family::ProductOfFinite:
    case Family::Zd:
      for (std::size_t i = 0; i < g.code.size(); ++i) push(static_cast<int>(i), g.code[i]);
      break;
    case Family::FreeF2:
      for (int x : g.code) push(std::abs(x) - 1, x > 0 ? 1 : -1);
      break;
    case Family::FreeProductZ2Z3:
      for (int y : g.code) push(y == 0 ? 0 : 1, y == 0 ? 1 : y);
      break;
  }
  return out;
}

GroupElement Group::generator_power(int index, int exponent) const {
  const auto basic = basic_generators();
  if (index < 0 || static_cast<std::size_t>(index) >= basic.size())
    throw std::invalid_argument("generator index out of range");
  GroupElement base = exponent < 0 ? inverse(basic[static_cast<std::size_t>(index)])
                                   : basic[static_cast<std::size_t>(index)];
  GroupElement r = identity();
  for (int e = std::abs(exponent); e > 0; e >>= 1) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
  }
  return r;
}

GroupElement Group::normal_form(std::string_view word) const {
  const auto tokens = tokenize(ascii_word(word));
  GroupElement r = identity();
  const bool additive = spec_.family == Family::Zd || spec_.family == Family::ProductOfFinite ||
                        spec_.family == Family::Cyclic;
  for (const auto& tok : tokens) {
    GroupElement piece;
    if (tok.kind == Token::Tuple || tok.kind == Token::Integer) {
      if (!additive) throw std::invalid_argument("numeric token in a word for " + name());
      const std::size_t k = identity().code.size();
      if (tok.values.size() != k)
        throw std::invalid_argument("tuple arity does not match " + name());
      piece = identity();
      for (std::size_t i = 0; i < k; ++i) {
        const long long v = tok.values[i] * tok.exponent;
        if (spec_.family == Family::Zd) {
          piece.code[i] = static_cast<int>(v);
        } else {
          piece.code[i] = mod(v, spec_.params[i]);
        }
      }
      r = mul(r, piece);
      continue;
    }
    const int e = static_cast<int>(tok.exponent);
    const char c = tok.symbol;
    if (c == 'e') continue;
    int index = -1;
    int sign = 1;
    switch (spec_.family) {
      case Family::Cyclic:
        if (c == 'r' || c == 'g') index = 0;
        break;
      case Family::Dihedral:
        if (c == 'r') index = 0;
        if (c == 's') index = 1;
        break;
      case Family::FreeF2:
        if (c == 'a' || c == 'A') index = 0;
        if (c == 'b' || c == 'B') index = 1;
        if (c == 'A' || c == 'B') sign = -1;
        break;
      case Family::FreeProductZ2Z3:
        if (c == 's') index = 0;
        if (c == 't') index = 1;
        break;
      default:
        break;
    }
    if (index < 0) throw std::invalid_argument(std::string("unknown generator symbol '") + c + "' for " + name());
    r = mul(r, generator_power(index, sign * e));
  }
  return r;
}

std::string Group::to_string(const GroupElement& g) const {
  if (is_identity(g)) return "e";
  auto power = [](const std::string& sym, int e) {
    return e == 1 ? sym : sym + "^" + std::to_string(e);
  };
  std::string s;
  auto append = [&](const std::string& piece) {
    if (!s.empty()) s += ' ';
    s += piece;
  };
  switch (spec_.family) {
    case Family::Cyclic: return std::to_string(g.code[0]);
    case Family::Dihedral:
      if (g.code[0] != 0) append(power("r", g.code[0]));
      if (g.code[1] != 0) append("s");
      return s;
    case Family::ProductOfFinite:
    case Family::Zd: {
      if (g.code.size() == 1) return std::to_string(g.code[0]);
      s = "(";
      for (std::size_t i = 0; i < g.code.size(); ++i) s += (i ? "," : "") + std::to_string(g.code[i]);
      return s + ")";
    }
    case Family::FreeF2:
      for (const auto& [idx, e] : factorization(g)) append(power(idx == 0 ? "a" : "b", e));
      return s;
    case Family::FreeProductZ2Z3:
      for (int y : g.code) append(y == 0 ? "s" : (y == 1 ? "t" : "t^2"));
      return s;
  }
  return s;
}

bool Group::supports_length(LengthTag tag) const {
  switch (tag) {
    case LengthTag::Word: return true;
    case LengthTag::L1:
    case LengthTag::L2:
    case LengthTag::L2Squared: return spec_.family == Family::Zd;
    case LengthTag::Block: return spec_.family == Family::FreeProductZ2Z3;
  }
  return false;
}

double Group::length(const GroupElement& g, LengthTag tag) const {
  if (!supports_length(tag))
    throw std::invalid_argument("length function " + std::string(length_name(tag)) +
                                " is not defined on " + name());
  if (spec_.family == Family::Zd) {
    double l1 = 0.0;
    double sq = 0.0;
    for (int x : g.code) {
      l1 += std::abs(x);
      sq += static_cast<double>(x) * x;
    }
    if (tag == LengthTag::L2) return std::sqrt(sq);
    if (tag == LengthTag::L2Squared) return sq;
    return l1;
  }
  if (spec_.family == Family::FreeF2 || spec_.family == Family::FreeProductZ2Z3)
    return static_cast<double>(g.code.size());
  return word_length_.at(g);
}

LengthTag Group::default_length() const { return LengthTag::Word; }

int Group::diameter() const {
  if (!is_finite()) throw std::logic_error("diameter() on an infinite group");
  return diameter_;
}

std::vector<GroupElement> Group::ball(double radius, LengthTag tag) const {
  if (!(radius >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  if (!supports_length(tag))
    throw std::invalid_argument("length function " + std::string(length_name(tag)) +
                                " is not defined on " + name());
  const double cut = radius + 1e-12 * std::max(1.0, radius);
  std::vector<GroupElement> out;
  if (is_finite()) {
    for (const auto& g : elements_)
      if (length(g, tag) <= cut) out.push_back(g);
  } else if (spec_.family == Family::Zd) {
    const int d = spec_.params[0];
    const int bound = static_cast<int>(
        std::floor(tag == LengthTag::L2Squared ? std::sqrt(cut) : cut));
    std::vector<int> code(static_cast<std::size_t>(d), -bound);
    while (true) {
      GroupElement g{code};
      if (length(g, tag) <= cut) out.push_back(std::move(g));
      std::size_t j = code.size();
      while (j-- > 0) {
        if (++code[j] <= bound) break;
        code[j] = -bound;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  } else {
    const int steps = static_cast<int>(std::floor(cut));
    const auto gens = generators();
    std::set<GroupElement> seen{identity()};
    std::vector<GroupElement> layer{identity()};
    for (int k = 0; k < steps; ++k) {
      std::vector<GroupElement> next;
      for (const auto& g : layer) {
        for (const auto& s : gens) {
          GroupElement h = mul(g, s);
          if (h.code.size() == g.code.size() + 1 && seen.insert(h).second) next.push_back(std::move(h));
        }
      }
      layer = std::move(next);
    }
    out.assign(seen.begin(), seen.end());
  }
  std::stable_sort(out.begin(), out.end(), [&](const GroupElement& a, const GroupElement& b) {
    const double la = length(a, tag);
    const double lb = length(b, tag);
    if (la != lb) return la < lb;
    return a < b;
  });
  return out;
}

bool Group::has_folner() const { return is_finite() || spec_.family == Family::Zd; }

std::vector<GroupElement> Group::folner(int i) const {
  if (i < 1) throw std::invalid_argument("Folner index must be >= 1");
  if (is_finite()) return elements_;
  if (spec_.family != Family::Zd)
    throw std::domain_error("no Folner sequence is shipped for " + name());
  const int d = spec_.params[0];
  std::vector<GroupElement> out;
  std::vector<int> code(static_cast<std::size_t>(d), 0);
  while (true) {
    out.push_back({code});
    std::size_t j = code.size();
    while (j-- > 0) {
      if (++code[j] < i) break;
      code[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::size_t translate_overlap(const Group& group, const GroupElement& g,
                              const std::vector<GroupElement>& f) {
  const std::set<GroupElement> members(f.begin(), f.end());
  std::size_t count = 0;
  for (const auto& x : f)
    if (members.count(group.mul(g, x))) ++count;
  return count;
}

}  // namespace twisted::grp
