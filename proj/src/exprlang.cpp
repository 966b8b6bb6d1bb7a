#include "treeaut/exprlang.hpp"

#include <cctype>
#include <sstream>

#include "treeaut/elements.hpp"

namespace treeaut {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr parse() {
    skip_space();
    ExprPtr expr = parse_expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", column());
    return expr;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  int column() const { return static_cast<int>(pos_) + 1; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    if (!at(c)) throw ParseError(std::string("expected '") + c + "'", column());
    ++pos_;
  }

  ExprPtr parse_expr() {
    ExprPtr first = parse_term();
    std::vector<ExprPtr> factors{first};
    skip_space();
    while (at('*')) {
      ++pos_;
      skip_space();
      factors.push_back(parse_term());
      skip_space();
    }
    if (factors.size() == 1) return first;
    auto node = std::make_shared<Expr>();
    node->kind = Expr::Kind::Compose;
    node->children = std::move(factors);
    node->column_begin = node->children.front()->column_begin;
    node->column_end = node->children.back()->column_end;
    return node;
  }

  ExprPtr parse_term() {
    ExprPtr base = parse_atom();
    skip_space();
    if (!at('^')) return base;
    ++pos_;
    skip_space();
    auto node = std::make_shared<Expr>();
    node->kind = Expr::Kind::Power;
    node->children = {base};
    node->column_begin = base->column_begin;
    node->rational = parse_rational();
    node->column_end = static_cast<int>(pos_);
    return node;
  }

  mpq_class parse_rational() {
    const int start = column();
    std::string digits;
    if (at('-')) {
      digits.push_back('-');
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected a rational", column());
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits.push_back(text_[pos_]);
      ++pos_;
    }
    if (at('/')) {
      digits.push_back('/');
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("expected denominator digits", column());
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits.push_back(text_[pos_]);
        ++pos_;
      }
    }
    mpq_class value;
    if (value.set_str(digits, 10) != 0) throw ParseError("malformed rational", start);
    if (value.get_den() == 0) throw ParseError("zero denominator", start);
    value.canonicalize();
    return value;
  }

  int parse_cycle_point() {
    bool negative = false;
    if (at('-')) {
      negative = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected a cycle point", column());
    }
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000) throw ParseError("cycle point too large", column());
      ++pos_;
    }
    return static_cast<int>(negative ? -value : value);
  }

  std::vector<std::vector<int>> parse_cycles() {
    std::vector<std::vector<int>> cycles;
    skip_space();
    while (at('(')) {
      ++pos_;
      std::vector<int> cycle;
      skip_space();
      while (!at(')')) {
        cycle.push_back(parse_cycle_point());
        skip_space();
      }
      expect(')');
      if (!cycle.empty()) cycles.push_back(std::move(cycle));
      skip_space();
    }
    return cycles;
  }

  std::string parse_word() {
    std::string word;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      word.push_back(text_[pos_]);
      ++pos_;
    }
    return word;
  }

  ExprPtr parse_atom() {
    skip_space();
    const int start = column();
    if (at('(')) {
      ++pos_;
      ExprPtr inner = parse_expr();
      skip_space();
      expect(')');
      // Keep the subexpression but widen the span to the parentheses.
      auto node = std::make_shared<Expr>(*inner);
      node->column_begin = start;
      node->column_end = static_cast<int>(pos_);
      return node;
    }
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected an expression", column());
    }
    const std::string word = parse_word();
    auto node = std::make_shared<Expr>();
    node->column_begin = start;
    if (word == "tau" || word == "iota" || word == "eps" || word == "theta" || word == "id") {
      node->kind = Expr::Kind::Name;
      node->name = word;
      node->column_end = static_cast<int>(pos_);
      return node;
    }
    if (word == "lambda" || word == "psi") {
      node->kind = word == "lambda" ? Expr::Kind::Lambda : Expr::Kind::Psi;
      expect('(');
      skip_space();
      node->rational = parse_rational();
      skip_space();
      expect(')');
      node->column_end = static_cast<int>(pos_);
      return node;
    }
    if (word == "rigid") {
      node->kind = Expr::Kind::Rigid;
      expect('(');
      node->cycles = parse_cycles();
      expect(')');
      node->column_end = static_cast<int>(pos_);
      return node;
    }
    if (word == "wreath") {
      node->kind = Expr::Kind::Wreath;
      expect('(');
      skip_space();
      node->children.push_back(parse_expr());
      skip_space();
      while (at(',')) {
        ++pos_;
        skip_space();
        node->children.push_back(parse_expr());
        skip_space();
      }
      expect(';');
      node->cycles = parse_cycles();
      expect(')');
      node->column_end = static_cast<int>(pos_);
      return node;
    }
    if (word == "conj") {
      node->kind = Expr::Kind::Conj;
      expect('(');
      skip_space();
      node->children.push_back(parse_expr());
      skip_space();
      expect(',');
      skip_space();
      node->children.push_back(parse_expr());
      skip_space();
      expect(')');
      node->column_end = static_cast<int>(pos_);
      return node;
    }
    throw ParseError("unknown name '" + word + "'", start);
  }
};

std::string cycles_to_string(const std::vector<std::vector<int>>& cycles) {
  std::ostringstream out;
  for (const auto& cycle : cycles) {
    out << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) out << ' ';
      out << cycle[i];
    }
    out << ')';
  }
  return out.str();
}

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

std::string unparse(const ExprPtr& expr) {
  switch (expr->kind) {
    case Expr::Kind::Name:
      return expr->name;
    case Expr::Kind::Lambda:
      return "lambda(" + expr->rational.get_str() + ")";
    case Expr::Kind::Psi:
      return "psi(" + expr->rational.get_str() + ")";
    case Expr::Kind::Rigid:
      return "rigid(" + cycles_to_string(expr->cycles) + ")";
    case Expr::Kind::Wreath: {
      std::string out = "wreath(";
      for (std::size_t i = 0; i < expr->children.size(); ++i) {
        if (i > 0) out += ", ";
        out += unparse(expr->children[i]);
      }
      out += "; " + cycles_to_string(expr->cycles) + ")";
      return out;
    }
    case Expr::Kind::Conj:
      return "conj(" + unparse(expr->children[0]) + ", " + unparse(expr->children[1]) + ")";
    case Expr::Kind::Compose: {
      std::string out;
      for (std::size_t i = 0; i < expr->children.size(); ++i) {
        if (i > 0) out += " * ";
        const ExprPtr& child = expr->children[i];
        if (child->kind == Expr::Kind::Compose) {
          out += "(" + unparse(child) + ")";
        } else {
          out += unparse(child);
        }
      }
      return out;
    }
    case Expr::Kind::Power: {
      const ExprPtr& base = expr->children[0];
      std::string base_text = unparse(base);
      if (base->kind == Expr::Kind::Compose || base->kind == Expr::Kind::Power) {
        base_text = "(" + base_text + ")";
      }
      return base_text + "^" + expr->rational.get_str();
    }
  }
  throw std::logic_error("unreachable");
}

TreeAut evaluate(Engine& engine, int degree, const ExprPtr& expr) {
  try {
    switch (expr->kind) {
      case Expr::Kind::Name: {
        if (expr->name == "tau") return tau(engine, degree);
        if (expr->name == "iota") return iota(engine, degree);
        if (expr->name == "eps") return eps(engine, degree);
        if (expr->name == "id") return engine.identity(degree);
        if (degree != 4) {
          throw EvalError("theta is defined on the 4-ary tree only", expr->column_begin,
                          expr->column_end);
        }
        return theta4(engine);
      }
      case Expr::Kind::Lambda:
        return lambda(engine, NAdic(degree, expr->rational));
      case Expr::Kind::Psi:
        return psi4(engine, NAdic(degree, expr->rational));
      case Expr::Kind::Rigid:
        return engine.rigid(Perm::from_cycles(degree, expr->cycles));
      case Expr::Kind::Wreath: {
        if (static_cast<int>(expr->children.size()) != degree) {
          throw EvalError("wreath needs exactly " + std::to_string(degree) + " children, got " +
                              std::to_string(expr->children.size()),
                          expr->column_begin, expr->column_end);
        }
        std::vector<TreeAut> children;
        children.reserve(expr->children.size());
        for (const ExprPtr& child : expr->children) {
          children.push_back(evaluate(engine, degree, child));
        }
        return engine.wreath(children, Perm::from_cycles(degree, expr->cycles));
      }
      case Expr::Kind::Conj:
        return engine.conjugate(evaluate(engine, degree, expr->children[0]),
                                evaluate(engine, degree, expr->children[1]));
      case Expr::Kind::Compose: {
        TreeAut result = evaluate(engine, degree, expr->children[0]);
        for (std::size_t i = 1; i < expr->children.size(); ++i) {
          result = engine.compose(result, evaluate(engine, degree, expr->children[i]));
        }
        return result;
      }
      case Expr::Kind::Power: {
        TreeAut base = evaluate(engine, degree, expr->children[0]);
        if (expr->rational.get_den() == 1) {
          const mpz_class& num = expr->rational.get_num();
          if (!num.fits_slong_p()) {
            throw EvalError("integer exponent too large", expr->column_begin, expr->column_end);
          }
          return engine.power_int(base, num.get_si());
        }
        auto base_exponent = engine.tau_exponent_of(base);
        if (!base_exponent) {
          throw EvalError("fractional exponent needs a power of tau", expr->column_begin,
                          expr->column_end);
        }
        return engine.tau_pow_adic(NAdic(degree, base_exponent->value() * expr->rational));
      }
    }
    throw std::logic_error("unreachable");
  } catch (const EvalError&) {
    throw;
  } catch (const std::exception& ex) {
    throw EvalError(ex.what(), expr->column_begin, expr->column_end);
  }
}

TreeAut evaluate_text(Engine& engine, int degree, const std::string& text) {
  return evaluate(engine, degree, parse_expression(text));
}

}  // namespace treeaut
