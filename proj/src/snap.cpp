#include "wsa/snap.hpp"

#include <cctype>
#include <string>

#include "wsa/error.hpp"

namespace wsa {

Rational SnappedReal::exact() const {
  Rational out = to_rational(hi) + to_rational(lo);
  out.canonicalize();
  return out;
}

SnappedReal snap(const MpReal& value) {
  MpReal rounded(kSnapBits);
  mpfr_set(rounded.get(), value.get(), MPFR_RNDN);
  SnappedReal out;
  out.hi = mpfr_get_ld(rounded.get(), MPFR_RNDN);
  MpReal rest(MpReal::kDefaultPrecision);
  mpfr_set(rest.get(), rounded.get(), MPFR_RNDN);
  MpReal hi_mp(MpReal::kDefaultPrecision);
  mpfr_set_ld(hi_mp.get(), out.hi, MPFR_RNDN);
  mpfr_sub(rest.get(), rest.get(), hi_mp.get(), MPFR_RNDN);
  out.lo = mpfr_get_ld(rest.get(), MPFR_RNDN);
  return out;
}

SnappedReal snap(double value) {
  SnappedReal out;
  out.hi = value;
  return out;
}

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  MpReal parse() {
    MpReal v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("bad real expression '" + std::string(text_) + "': " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MpReal expr() {
    MpReal acc = term();
    for (;;) {
      if (accept('+')) {
        MpReal rhs = term();
        mpfr_add(acc.get(), acc.get(), rhs.get(), MPFR_RNDN);
      } else if (accept('-')) {
        MpReal rhs = term();
        mpfr_sub(acc.get(), acc.get(), rhs.get(), MPFR_RNDN);
      } else {
        return acc;
      }
    }
  }

  MpReal term() {
    MpReal acc = factor();
    for (;;) {
      if (accept('*')) {
        MpReal rhs = factor();
        mpfr_mul(acc.get(), acc.get(), rhs.get(), MPFR_RNDN);
      } else if (accept('/')) {
        MpReal rhs = factor();
        if (mpfr_zero_p(rhs.get())) fail("division by zero");
        mpfr_div(acc.get(), acc.get(), rhs.get(), MPFR_RNDN);
      } else {
        return acc;
      }
    }
  }

  MpReal factor() {
    if (accept('-')) {
      MpReal v = factor();
      mpfr_neg(v.get(), v.get(), MPFR_RNDN);
      return v;
    }
    if (accept('(')) {
      MpReal v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    skip_space();
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      MpReal v = expr();
      if (!accept(')')) fail("missing ')'");
      if (mpfr_sgn(v.get()) < 0) fail("sqrt of a negative number");
      mpfr_sqrt(v.get(), v.get(), MPFR_RNDN);
      return v;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool exp_sign = (c == '+' || c == '-') && pos_ > start &&
                            (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' ||
          c == 'E' || exp_sign) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a number");
    const Rational r = parse_rational(text_.substr(start, pos_ - start));
    MpReal v;
    mpfr_set_q(v.get(), r.get_mpq_t(), MPFR_RNDN);
    return v;
  }
};

}  // namespace

SnappedReal snap_expression(std::string_view text) {
  return snap(ExpressionParser(text).parse());
}

std::vector<SnappedReal> snap_all(std::span<const double> values) {
  std::vector<SnappedReal> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(snap(v));
  return out;
}

std::vector<double> as_doubles(std::span<const SnappedReal> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.as_double());
  return out;
}

}  // namespace wsa
