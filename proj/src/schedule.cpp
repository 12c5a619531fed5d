#include "censor/schedule.hpp"

#include "censor/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace censor {

std::string to_string(const Op& op) {
  return std::visit(
      [](const auto& o) -> std::string {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Transposition>) {
          return "t(" + std::to_string(o.i + 1) + "," + std::to_string(o.j + 1) + ")";
        } else if constexpr (std::is_same_v<O, Recolor>) {
          return "k(" + std::to_string(o.v + 1) + ")";
        } else if constexpr (std::is_same_v<O, BlockShuffle>) {
          std::string s = "b{";
          for (std::size_t k = 0; k < o.positions.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(o.positions[k] + 1);
          }
          return s + "}";
        } else {
          return "p(" + std::to_string(o.v + 1) + ";" + o.strength.to_string() + ";" +
                 std::string(to_string(o.coupling)) + ")";
        }
      },
      op);
}

namespace {

void flatten_into(const std::vector<Term>& terms, std::vector<Op>& out) {
  for (const Term& t : terms) {
    if (const auto* op = std::get_if<Op>(&t.node)) {
      out.push_back(*op);
    } else {
      const auto& rep = std::get<Repeat>(t.node);
      for (int k = 0; k < rep.count; ++k) flatten_into(rep.body, out);
    }
  }
}

std::size_t length_of(const std::vector<Term>& terms) {
  std::size_t n = 0;
  for (const Term& t : terms) {
    if (std::holds_alternative<Op>(t.node)) {
      ++n;
    } else {
      const auto& rep = std::get<Repeat>(t.node);
      n += static_cast<std::size_t>(rep.count) * length_of(rep.body);
    }
  }
  return n;
}

void print_terms(const std::vector<Term>& terms, std::string& out) {
  bool first = true;
  for (const Term& t : terms) {
    if (!first) out += ' ';
    first = false;
    if (const auto* op = std::get_if<Op>(&t.node)) {
      out += to_string(*op);
    } else {
      const auto& rep = std::get<Repeat>(t.node);
      out += '[';
      print_terms(rep.body, out);
      out += "]^" + std::to_string(rep.count);
    }
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Schedule schedule() {
    Schedule s;
    s.terms = terms(false);
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
    return s;
  }

  Op single_op() {
    skip_space();
    Op op = parse_one_op();
    skip_space();
    if (!at_end()) fail("trailing characters after op");
    return op;
  }

 private:
  std::vector<Term> terms(bool nested) {
    std::vector<Term> out;
    while (true) {
      skip_space();
      if (at_end()) {
        if (nested) fail("missing ']'");
        return out;
      }
      if (peek() == ']') {
        if (!nested) fail("unmatched ']'");
        return out;
      }
      if (peek() == '[') {
        ++pos_;
        Repeat rep;
        rep.body = terms(true);
        expect(']');
        if (rep.body.empty()) fail("empty repetition group");
        expect('^');
        std::size_t at = pos_;
        long count = integer();
        if (count < 1) fail_at(at, "repetition count must be at least 1");
        rep.count = static_cast<int>(count);
        out.push_back(Term{std::move(rep)});
      } else {
        out.push_back(Term{parse_one_op()});
      }
    }
  }

  Op parse_one_op() {
    std::size_t start = pos_;
    if (at_end()) fail("expected an op");
    char head = text_[pos_++];
    switch (head) {
      case 't': {
        expect('(');
        int i = index();
        expect(',');
        int j = index();
        expect(')');
        if (i == j) fail_at(start, "transposition needs two distinct locations");
        return Transposition{i, j};
      }
      case 'k': {
        expect('(');
        int v = index();
        expect(')');
        return Recolor{v};
      }
      case 'b': {
        expect('{');
        BlockShuffle b;
        b.positions.push_back(index());
        while (try_consume(',')) b.positions.push_back(index());
        expect('}');
        std::sort(b.positions.begin(), b.positions.end());
        if (std::adjacent_find(b.positions.begin(), b.positions.end()) != b.positions.end()) {
          fail_at(start, "block lists a location twice");
        }
        return b;
      }
      case 'p': {
        expect('(');
        int v = index();
        expect(';');
        skip_space();
        std::size_t at = pos_;
        std::optional<PottsStrength> strength;
        if (try_consume_word("J=")) {
          std::string_view tok = number_token();
          double j = 0;
          auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), j);
          if (ec != std::errc() || ptr != tok.data() + tok.size()) fail_at(at, "malformed J value");
          try {
            strength = PottsStrength::from_J(j);
          } catch (const InvalidArgument& e) {
            fail_at(at, e.what());
          }
        } else if (try_consume_word("w=")) {
          std::string_view tok = number_token();
          try {
            strength = PottsStrength::from_w(parse_rational(tok));
          } catch (const InvalidArgument& e) {
            fail_at(at, e.what());
          }
        } else {
          fail("expected 'J=' or 'w='");
        }
        expect(';');
        skip_space();
        Coupling coupling;
        if (try_consume_word("af")) {
          coupling = Coupling::antiferro;
        } else if (try_consume_word("f")) {
          coupling = Coupling::ferro;
        } else {
          fail("expected coupling 'af' or 'f'");
        }
        expect(')');
        return PottsUpdate{v, coupling, *strength};
      }
      default:
        fail_at(start, "unknown op '" + std::string(1, head) + "'");
    }
  }

  // 1-based integer in the text, 0-based result.
  int index() {
    skip_space();
    std::size_t at = pos_;
    long value = integer();
    if (value < 1) fail_at(at, "locations and vertices are numbered from 1");
    return static_cast<int>(value - 1);
  }

  long integer() {
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    long value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || value > 1'000'000'000) fail_at(start, "integer out of range");
    return value;
  }

  std::string_view number_token() {
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                         std::string_view("+-./eE").find(peek()) != std::string_view::npos)) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return text_.substr(start, pos_ - start);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  bool try_consume(char c) {
    skip_space();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool try_consume_word(std::string_view w) {
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& message) const {
    throw ParseError(at, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Op normalized(Op op) {
  if (auto* t = std::get_if<Transposition>(&op)) {
    if (t->i > t->j) std::swap(t->i, t->j);
  }
  return op;
}

}  // namespace

Schedule Schedule::from_ops(std::vector<Op> ops) {
  Schedule s;
  for (Op& op : ops) s.terms.push_back(Term{std::move(op)});
  return s;
}

std::vector<Op> Schedule::flatten() const {
  std::vector<Op> out;
  out.reserve(flat_length());
  flatten_into(terms, out);
  return out;
}

std::size_t Schedule::flat_length() const { return length_of(terms); }

std::string to_string(const Schedule& schedule) {
  std::string out;
  print_terms(schedule.terms, out);
  return out;
}

Schedule parse_schedule(std::string_view text) { return Parser(text).schedule(); }

Op parse_op(std::string_view text) { return Parser(text).single_op(); }

std::vector<Op> with_insertion(std::span<const Op> ops, std::size_t position, const Op& extra) {
  if (position > ops.size()) {
    throw InvalidArgument("insertion position " + std::to_string(position) + " is past the end of a " +
                          std::to_string(ops.size()) + "-op schedule");
  }
  std::vector<Op> out(ops.begin(), ops.begin() + static_cast<std::ptrdiff_t>(position));
  out.push_back(extra);
  out.insert(out.end(), ops.begin() + static_cast<std::ptrdiff_t>(position), ops.end());
  return out;
}

void validate_op(const Op& op, const StateSpace& space) {
  auto in_range = [&](int x) { return x >= 0 && x < space.width(); };
  auto bad = [&](const std::string& why) {
    throw InvalidArgument("op " + to_string(op) + " " + why + " on space " + space.spec());
  };
  std::visit(
      [&](const auto& o) {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Transposition>) {
          if (!space.is_permutations()) bad("needs a permutation space");
          if (!in_range(o.i) || !in_range(o.j)) bad("is out of range");
          if (o.i == o.j) bad("swaps a location with itself");
        } else if constexpr (std::is_same_v<O, Recolor>) {
          if (!space.is_colorings()) bad("needs a coloring space");
          if (!in_range(o.v)) bad("is out of range");
        } else if constexpr (std::is_same_v<O, BlockShuffle>) {
          if (!space.is_permutations()) bad("needs a permutation space");
          if (o.positions.empty()) bad("has an empty block");
          for (int p : o.positions) {
            if (!in_range(p)) bad("is out of range");
          }
        } else {
          if (!space.is_potts()) bad("needs a Potts space");
          if (!in_range(o.v)) bad("is out of range");
        }
      },
      op);
}

std::vector<Op> parse_family(std::string_view text, const StateSpace& space) {
  std::vector<Op> out;
  std::set<std::string> seen;
  auto add = [&](Op op) {
    validate_op(op, space);
    if (seen.insert(to_string(normalized(op))).second) out.push_back(std::move(op));
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string term(text.substr(pos, end - pos));
    pos = end;

    std::vector<std::size_t> stars;
    for (std::size_t k = 0; k < term.size(); ++k) {
      if (term[k] == '*') stars.push_back(k);
    }
    if (stars.empty()) {
      add(parse_op(term));
      continue;
    }
    // Odometer over 1..width for every wildcard.
    std::vector<int> digit(stars.size(), 1);
    while (true) {
      std::string expanded;
      std::size_t last = 0;
      for (std::size_t s = 0; s < stars.size(); ++s) {
        expanded += term.substr(last, stars[s] - last) + std::to_string(digit[s]);
        last = stars[s] + 1;
      }
      expanded += term.substr(last);
      try {
        add(parse_op(expanded));
      } catch (const ParseError&) {
        // e.g. t(3,3)
      } catch (const InvalidArgument&) {
      }
      std::size_t k = stars.size();
      while (k > 0 && digit[k - 1] == space.width()) digit[--k] = 1;
      if (k == 0) break;
      ++digit[k - 1];
    }
  }
  if (out.empty()) throw InvalidArgument("op family '" + std::string(text) + "' is empty for " + space.spec());
  return out;
}

}  // namespace censor
