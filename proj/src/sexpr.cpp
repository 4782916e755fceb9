#include <cctype>
#include <sstream>

#include "qrumin/scalar.hpp"

namespace qrumin {

namespace {

void print_rat(std::ostream& os, const mpq_class& q) {
  os << "(rat " << q.get_num().get_str() << " " << q.get_den().get_str() << ")";
}

void print_pow(std::ostream& os, const std::string& atom, int k) {
  if (k == 1)
    os << " " << atom;
  else
    os << " (pow " << atom << " " << k << ")";
}

void print_poly(std::ostream& os, const Poly& p) {
  os << "(add";
  for (const auto& t : p) {
    // coefficient a+bi splits into a real term and an i-term
    for (int part = 0; part < 2; ++part) {
      const mpq_class& c = part == 0 ? t.second.re() : t.second.im();
      if (c == 0) continue;
      os << " (mul ";
      print_rat(os, c);
      if (part == 1) os << " i";
      for (int v = 0; v < 5; ++v)
        if (t.first.e[v] != 0)
          print_pow(os, std::string("(var ") + coord_name(Coord(v)) + ")", t.first.e[v]);
      if (t.first.ue != 0) print_pow(os, "u", t.first.ue);
      if (t.first.se != 0) print_pow(os, "sigma", t.first.se);
      os << ")";
    }
  }
  os << ")";
}

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  UCtx ctx;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    if (pos >= s.size()) throw std::invalid_argument("sexpr: unexpected end");
    return s[pos];
  }
  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')')
      ++pos;
    if (start == pos) throw std::invalid_argument("sexpr: expected token");
    return s.substr(start, pos - start);
  }
  void expect(char c) {
    if (peek() != c) throw std::invalid_argument(std::string("sexpr: expected ") + c);
    ++pos;
  }

  Scalar parse() {
    if (peek() != '(') {
      std::string tok = token();
      if (tok == "i") return Scalar::i();
      if (tok == "u") return Scalar::u(require_ctx(), 1);
      if (tok == "sigma") return Scalar::sigma(1);
      throw std::invalid_argument("sexpr: unknown atom " + tok);
    }
    expect('(');
    std::string op = token();
    Scalar result;
    if (op == "add") {
      result = Scalar::zero();
      while (peek() != ')') result += parse();
    } else if (op == "mul") {
      result = Scalar::one();
      while (peek() != ')') result *= parse();
    } else if (op == "pow") {
      Scalar base = parse();
      long k = std::stol(token());
      result = Scalar::one();
      Scalar b = k < 0 ? base.inv() : base;
      for (long j = 0; j < std::labs(k); ++j) result *= b;
    } else if (op == "rat") {
      mpz_class n(token()), d(token());
      mpq_class q(n, d);
      q.canonicalize();
      result = Scalar::of(GRat(q));
    } else if (op == "var") {
      std::string name = token();
      bool found = false;
      for (Coord c : kCoords)
        if (name == coord_name(c)) {
          result = Scalar::var(c);
          found = true;
        }
      if (!found) throw std::invalid_argument("sexpr: unknown variable " + name);
    } else {
      throw std::invalid_argument("sexpr: unknown op " + op);
    }
    expect(')');
    return result;
  }
  UCtx require_ctx() {
    if (!ctx) throw std::invalid_argument("sexpr: u present but no context given");
    return ctx;
  }
};

}  // namespace

std::string Scalar::to_sexpr() const {
  std::ostringstream os;
  if (is_polynomial()) {
    print_poly(os, num_);
  } else {
    os << "(mul ";
    print_poly(os, num_);
    os << " (pow ";
    print_poly(os, den_);
    os << " -1))";
  }
  return os.str();
}

Scalar Scalar::from_sexpr(const std::string& text, const UCtx& ctx) {
  Parser p{text, 0, ctx};
  Scalar s = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) throw std::invalid_argument("sexpr: trailing input");
  return s;
}

}  // namespace qrumin
