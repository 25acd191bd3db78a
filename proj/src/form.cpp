#include "mcmcert/form.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "mcmcert/error.hpp"

namespace mcmcert {

HomogeneousForm::HomogeneousForm(int n, int degree) : n_(n), degree_(degree) {
    if (n < 0) throw Error("ambient dimension must be non-negative");
}

HomogeneousForm HomogeneousForm::constant(int n, const mpq_class& c) {
    return monomial(n, Exponent(static_cast<std::size_t>(n + 1), 0), c);
}

HomogeneousForm HomogeneousForm::variable(int n, int i) {
    if (i < 0 || i > n) throw Error("variable index out of range");
    Exponent e(static_cast<std::size_t>(n + 1), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(n, e);
}

HomogeneousForm HomogeneousForm::monomial(int n, const Exponent& e, const mpq_class& c) {
    if (e.size() != static_cast<std::size_t>(n + 1)) throw Error("exponent length must be n+1");
    int deg = 0;
    for (int x : e) {
        if (x < 0) throw Error("negative exponent");
        deg += x;
    }
    HomogeneousForm f(n, deg);
    if (c != 0) f.terms_.emplace(e, c);
    return f;
}

HomogeneousForm HomogeneousForm::linear(int n, std::span<const mpq_class> coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(n + 1)) {
        throw Error("linear form needs n+1 coefficients");
    }
    HomogeneousForm f(n, 1);
    for (int i = 0; i <= n; ++i) f += variable(n, i) * coeffs[static_cast<std::size_t>(i)];
    f.degree_ = 1;
    return f;
}

mpq_class HomogeneousForm::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void HomogeneousForm::check_compatible(const HomogeneousForm& o, const char* op) const {
    if (n_ != o.n_) throw Error(std::string(op) + ": forms over different ambient spaces");
    if (!is_zero() && !o.is_zero() && degree_ != o.degree_) {
        throw DegreeMismatch(std::string(op) + ": degrees " + std::to_string(degree_) + " and " +
                             std::to_string(o.degree_));
    }
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& o) {
    check_compatible(o, "form addition");
    if (is_zero()) degree_ = o.degree_;
    for (const auto& [e, c] : o.terms_) {
        auto& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }
    return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& o) {
    HomogeneousForm neg = o;
    neg *= mpq_class(-1);
    return *this += neg;
}

HomogeneousForm& HomogeneousForm::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
    if (a.n_ != b.n_) throw Error("form product: different ambient spaces");
    HomogeneousForm out(a.n_, a.degree_ + b.degree_);
    Exponent e(static_cast<std::size_t>(a.n_ + 1));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto& slot = out.terms_[e];
            slot += ca * cb;
            if (slot == 0) out.terms_.erase(e);
        }
    }
    return out;
}

bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) {
    if (a.n_ != b.n_ || a.terms_ != b.terms_) return false;
    return a.is_zero() || a.degree_ == b.degree_;
}

mpq_class HomogeneousForm::evaluate(std::span<const mpq_class> point) const {
    if (point.size() != static_cast<std::size_t>(n_ + 1)) throw Error("point has wrong length");
    mpq_class total = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        }
        total += term;
    }
    return total;
}

Scalar HomogeneousForm::evaluate(const Field& field, std::span<const mpq_class> point) const {
    return Scalar(field, evaluate(point));
}

HomogeneousForm HomogeneousForm::substitute(const std::vector<HomogeneousForm>& images) const {
    if (images.size() != static_cast<std::size_t>(n_ + 1)) {
        throw Error("substitution needs one image per variable");
    }
    int target_n = images.front().ambient_dim();
    int image_deg = images.front().degree();
    for (const auto& g : images) {
        if (!g.is_zero()) {
            image_deg = g.degree();
            break;
        }
    }
    for (const auto& g : images) {
        if (g.ambient_dim() != target_n) throw Error("substitution images in different rings");
        if (!g.is_zero() && g.degree() != image_deg) {
            throw DegreeMismatch("substitution images of different degrees");
        }
    }
    HomogeneousForm out(target_n, degree_ * image_deg);
    for (const auto& [e, c] : terms_) {
        HomogeneousForm term = constant(target_n, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) term = term * images[i];
        }
        if (!term.is_zero()) out += term;
    }
    out.degree_ = degree_ * image_deg;
    return out;
}

std::string HomogeneousForm::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest monomial first, matching the graded lex basis order.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpq_class mag = abs(c);
        bool negative = c < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        bool is_const = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        bool wrote = false;
        if (mag != 1 || is_const) {
            out += mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) out += "*";
            out += "x" + std::to_string(i);
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
            wrote = true;
        }
    }
    return out;
}

namespace {

class FormParser {
public:
    FormParser(std::string_view text, int n) : text_(text), n_(n) {}

    HomogeneousForm parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty form");
        std::vector<HomogeneousForm> terms;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == text_.size()) break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            terms.push_back(parse_term() * mpq_class(sign));
            first = false;
        }
        std::optional<int> deg;
        HomogeneousForm sum(n_, 0);
        for (const auto& t : terms) {
            if (t.is_zero()) continue;
            if (deg && *deg != t.degree()) {
                throw ParseError("form '" + std::string(text_) + "' is not homogeneous");
            }
            deg = t.degree();
            sum += t;
        }
        return sum;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at position " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "'");
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    HomogeneousForm parse_term() {
        mpq_class coeff = 1;
        Exponent e(static_cast<std::size_t>(n_ + 1), 0);
        bool need_factor = true;
        while (need_factor) {
            skip_ws();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                mpq_class v{mpz_class(digits())};
                skip_ws();
                if (peek() == '/') {
                    ++pos_;
                    skip_ws();
                    mpz_class den(digits());
                    if (den == 0) fail("zero denominator");
                    v /= den;
                }
                coeff *= v;
            } else if (c == 'x') {
                ++pos_;
                int idx = std::stoi(digits());
                if (idx > n_) fail("variable x" + std::to_string(idx) + " outside x0..x" + std::to_string(n_));
                int power = 1;
                skip_ws();
                if (peek() == '^') {
                    ++pos_;
                    skip_ws();
                    power = std::stoi(digits());
                }
                e[static_cast<std::size_t>(idx)] += power;
            } else {
                fail("expected a coefficient or a variable");
            }
            skip_ws();
            if (peek() == '*') {
                ++pos_;
            } else if (peek() != 'x') {
                need_factor = false;
            }
        }
        return HomogeneousForm::monomial(n_, e, coeff);
    }

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

HomogeneousForm HomogeneousForm::parse(std::string_view text, int n,
                                       std::optional<int> expected_degree) {
    HomogeneousForm f = FormParser(text, n).parse();
    if (f.is_zero()) return HomogeneousForm(n, expected_degree.value_or(0));
    if (expected_degree && f.degree() != *expected_degree) {
        throw ParseError("form '" + std::string(text) + "' has degree " + std::to_string(f.degree()) +
                         ", expected " + std::to_string(*expected_degree));
    }
    return f;
}

}  // namespace mcmcert
