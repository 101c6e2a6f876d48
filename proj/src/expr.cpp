#include "rohlin/expr.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

using namespace expr_node;

std::shared_ptr<const MatrixExpr> share(MatrixExpr e) {
  return std::make_shared<const MatrixExpr>(std::move(e));
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  MatrixExpr parse_all() {
    MatrixExpr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(pos, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::int64_t integer(bool allow_negative) {
    skip_ws();
    const std::size_t start = pos_;
    if (allow_negative && pos_ < src_.size() && src_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == digits) fail_at(start, "expected an integer");
    const std::string text(src_.substr(start, pos_ - start));
    errno = 0;
    const long long v = std::strtoll(text.c_str(), nullptr, 10);
    if (errno == ERANGE) fail_at(start, "integer out of range");
    return v;
  }

  std::int64_t dimension() {
    const std::size_t start = (skip_ws(), pos_);
    const std::int64_t n = integer(false);
    if (n < 1) fail_at(start, "dimension must be positive");
    if (n > 4096) fail_at(start, "dimension exceeds 4096");
    return n;
  }

  Turns angle() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/' ||
          c == '.') {
        ++pos_;
      } else {
        break;
      }
    }
    std::string_view text = src_.substr(start, pos_ - start);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    try {
      return Turns::parse(text);
    } catch (const Error& e) {
      fail_at(start, e.what());
    }
  }

  double real_number() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        ++pos_;
      } else if ((c == 'e' || c == 'E') && pos_ > start) {
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
      } else {
        break;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) fail_at(start, "expected a number");
    return v;
  }

  Complex entry() {
    const double first = real_number();
    if (peek('i')) {
      ++pos_;
      return {0.0, first};
    }
    skip_ws();
    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
      const double second = real_number();
      expect('i');
      return {first, second};
    }
    return {first, 0.0};
  }

  MatrixExpr literal() {
    const std::size_t start = pos_;
    expect('[');
    std::vector<std::vector<Complex>> rows;
    do {
      expect('[');
      std::vector<Complex> row;
      do {
        row.push_back(entry());
      } while (peek(',') && (++pos_, true));
      expect(']');
      rows.push_back(std::move(row));
    } while (peek(',') && (++pos_, true));
    expect(']');
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) fail_at(start, "literal rows have different lengths");
    }
    return MatrixExpr(Literal{std::move(rows)});
  }

  MatrixExpr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    if (src_[pos_] == '(') {
      ++pos_;
      MatrixExpr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (src_[pos_] == '[') return literal();

    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name.empty()) fail("expected a generator name");
    expect('(');
    MatrixExpr result = [&]() -> MatrixExpr {
      if (name == "S") return MatrixExpr(Shift{dimension()});
      if (name == "I") return MatrixExpr(Identity{dimension()});
      if (name == "Omega") {
        const std::int64_t n = dimension();
        expect(',');
        return MatrixExpr(Clock{n, angle()});
      }
      if (name == "phase") return MatrixExpr(Phase{angle()});
      if (name == "diag") {
        std::vector<Turns> angles{angle()};
        while (peek(',')) {
          ++pos_;
          angles.push_back(angle());
        }
        if (angles.size() > 4096) fail_at(start, "diag() longer than 4096");
        return MatrixExpr(Diagonal{std::move(angles)});
      }
      if (name == "kron" || name == "dsum") {
        auto lhs = share(parse_expr());
        expect(',');
        auto rhs = share(parse_expr());
        if (name == "kron") return MatrixExpr(Kron{std::move(lhs), std::move(rhs)});
        return MatrixExpr(DirectSum{std::move(lhs), std::move(rhs)});
      }
      fail_at(start, "unknown generator '" + name + "'");
    }();
    expect(')');
    return result;
  }

  MatrixExpr power() {
    MatrixExpr base = primary();
    if (peek('^')) {
      ++pos_;
      const std::int64_t k = integer(true);
      return MatrixExpr(Power{share(std::move(base)), k});
    }
    return base;
  }

  MatrixExpr parse_expr() {
    if (++depth_ > 256) fail("expression nested too deeply");
    MatrixExpr lhs = power();
    while (peek('*')) {
      ++pos_;
      MatrixExpr rhs = power();
      lhs = MatrixExpr(Product{share(std::move(lhs)), share(std::move(rhs))});
    }
    --depth_;
    return lhs;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_entry(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  if (z.real() == 0.0) return format_real(z.imag()) + "i";
  const std::string sign = std::signbit(z.imag()) ? "-" : "+";
  return format_real(z.real()) + sign + format_real(std::abs(z.imag())) + "i";
}

ComplexMatrix matrix_power(const ComplexMatrix& base, std::int64_t k) {
  if (k < 0) return matrix_power(base.partialPivLu().inverse(), -k);
  ComplexMatrix result = ComplexMatrix::Identity(base.rows(), base.cols());
  ComplexMatrix square = base;
  while (k > 0) {
    if (k & 1) result = result * square;
    k >>= 1;
    if (k > 0) square = square * square;
  }
  return result;
}

struct Printer {
  std::string operator()(const Shift& s) const { return "S(" + std::to_string(s.n) + ")"; }
  std::string operator()(const Clock& c) const {
    return "Omega(" + std::to_string(c.n) + "," + c.angle.to_string() + ")";
  }
  std::string operator()(const Identity& i) const { return "I(" + std::to_string(i.n) + ")"; }
  std::string operator()(const Diagonal& d) const {
    std::string out = "diag(";
    for (std::size_t j = 0; j < d.angles.size(); ++j) {
      if (j) out += ",";
      out += d.angles[j].to_string();
    }
    return out + ")";
  }
  std::string operator()(const Phase& p) const { return "phase(" + p.angle.to_string() + ")"; }
  std::string operator()(const Literal& l) const {
    std::string out = "[";
    for (std::size_t r = 0; r < l.rows.size(); ++r) {
      if (r) out += ",";
      out += "[";
      for (std::size_t c = 0; c < l.rows[r].size(); ++c) {
        if (c) out += ",";
        out += format_entry(l.rows[r][c]);
      }
      out += "]";
    }
    return out + "]";
  }
  std::string operator()(const Kron& k) const {
    return "kron(" + k.lhs->to_string() + "," + k.rhs->to_string() + ")";
  }
  std::string operator()(const DirectSum& d) const {
    return "dsum(" + d.lhs->to_string() + "," + d.rhs->to_string() + ")";
  }
  std::string operator()(const Product& p) const {
    std::string rhs = p.rhs->to_string();
    if (std::holds_alternative<Product>(p.rhs->node())) rhs = "(" + rhs + ")";
    return p.lhs->to_string() + "*" + rhs;
  }
  std::string operator()(const Power& p) const {
    std::string base = p.base->to_string();
    if (std::holds_alternative<Product>(p.base->node()) ||
        std::holds_alternative<Power>(p.base->node())) {
      base = "(" + base + ")";
    }
    return base + "^" + std::to_string(p.exponent);
  }
};

struct Evaluator {
  ComplexMatrix operator()(const Shift& s) const { return shift_matrix(s.n); }
  ComplexMatrix operator()(const Clock& c) const { return clock_matrix(c.n, c.angle); }
  ComplexMatrix operator()(const Identity& i) const { return ComplexMatrix::Identity(i.n, i.n); }
  ComplexMatrix operator()(const Diagonal& d) const { return phase_diagonal(d.angles); }
  ComplexMatrix operator()(const Phase& p) const {
    ComplexMatrix m(1, 1);
    m(0, 0) = p.angle.phase();
    return m;
  }
  ComplexMatrix operator()(const Literal& l) const {
    const auto n = static_cast<Eigen::Index>(l.rows.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (static_cast<Eigen::Index>(l.rows[r].size()) != n) {
        throw Error(Errc::kNonSquareGenerator, "literal matrix is not square");
      }
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = l.rows[r][c];
    }
    return m;
  }
  ComplexMatrix operator()(const Kron& k) const {
    const ComplexMatrix a = k.lhs->evaluate(), b = k.rhs->evaluate();
    if (a.rows() * b.rows() > 4096) throw Error(Errc::kDimensionMismatch, "kron exceeds 4096 rows");
    return kron(a, b);
  }
  ComplexMatrix operator()(const DirectSum& d) const {
    return direct_sum(d.lhs->evaluate(), d.rhs->evaluate());
  }
  ComplexMatrix operator()(const Product& p) const {
    const ComplexMatrix a = p.lhs->evaluate(), b = p.rhs->evaluate();
    if (a.rows() == 1 && a.cols() == 1) return a(0, 0) * b;
    if (b.rows() == 1 && b.cols() == 1) return b(0, 0) * a;
    if (a.cols() != b.rows()) {
      throw Error(Errc::kDimensionMismatch, "product of " + std::to_string(a.rows()) + "x" +
                                                std::to_string(a.cols()) + " and " +
                                                std::to_string(b.rows()) + "x" +
                                                std::to_string(b.cols()) + " matrices");
    }
    return a * b;
  }
  ComplexMatrix operator()(const Power& p) const {
    const ComplexMatrix base = p.base->evaluate();
    if (base.rows() != base.cols()) throw Error(Errc::kNonSquareGenerator, "power of non-square matrix");
    return matrix_power(base, p.exponent);
  }
};

}  // namespace

MatrixExpr MatrixExpr::parse(std::string_view source) { return Parser(source).parse_all(); }

std::string MatrixExpr::to_string() const { return std::visit(Printer{}, node_); }

ComplexMatrix MatrixExpr::evaluate() const {
  ComplexMatrix m = std::visit(Evaluator{}, node_);
  if (m.rows() != m.cols()) throw Error(Errc::kNonSquareGenerator, "expression is not square");
  return m;
}

}  // namespace rohlin
