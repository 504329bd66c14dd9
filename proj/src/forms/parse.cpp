#include <cctype>
#include <charconv>
#include <limits>

#include "envsieve/errors.hpp"
#include "envsieve/forms.hpp"

namespace envsieve::forms {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    LinearSystem parse() {
        if (s_.empty()) fail("empty form");
        std::vector<LinearForm> forms;
        if (s_.find('(') == std::string::npos) {
            forms.push_back(linear(s_.size()));
        } else {
            while (pos_ < s_.size()) {
                if (!forms.empty() && s_[pos_] == '*') ++pos_;
                if (pos_ >= s_.size()) fail("dangling '*'");
                if (s_[pos_] == '(') {
                    std::size_t close = s_.find(')', pos_);
                    if (close == std::string::npos) fail("unbalanced parenthesis");
                    ++pos_;
                    forms.push_back(linear(close));
                    if (pos_ != close) fail("unexpected character");
                    ++pos_;
                } else {
                    forms.push_back(monomial());
                }
            }
        }
        return LinearSystem(std::move(forms));
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("cannot parse form \"" + s_ + "\" at offset " + std::to_string(pos_) + ": " + why);
    }

    std::int64_t integer() {
        std::int64_t v = 0;
        auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc()) fail(ec == std::errc::result_out_of_range ? "coefficient overflows 64 bits" : "expected a number");
        pos_ = static_cast<std::size_t>(end - s_.data());
        return v;
    }

    static std::int64_t checked_add(std::int64_t a, std::int64_t b, const Parser& p) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) p.fail("coefficient overflows 64 bits");
        return r;
    }

    // Bare factor outside parentheses: [-][digits][*]n.
    LinearForm monomial() {
        std::int64_t sign = 1;
        if (s_[pos_] == '-') {
            sign = -1;
            ++pos_;
        }
        std::int64_t a = 1;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            a = integer();
            if (pos_ < s_.size() && s_[pos_] == '*') ++pos_;
        }
        if (pos_ >= s_.size() || s_[pos_] != 'n') fail("expected 'n'");
        ++pos_;
        return {sign * a, 0};
    }

    // Signed sum of terms "c", "c*n", "cn", "n" up to position end.
    LinearForm linear(std::size_t end) {
        std::int64_t a = 0, b = 0;
        bool first = true;
        while (pos_ < end) {
            std::int64_t sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            if (pos_ >= end) fail("dangling sign");
            if (s_[pos_] == 'n') {
                ++pos_;
                a = checked_add(a, sign, *this);
                continue;
            }
            std::int64_t c = integer();
            if (pos_ > end) fail("unexpected character");
            if (pos_ < end && s_[pos_] == '*') {
                ++pos_;
                if (pos_ >= end || s_[pos_] != 'n') fail("expected 'n' after '*'");
            }
            if (pos_ < end && s_[pos_] == 'n') {
                ++pos_;
                a = checked_add(a, sign * c, *this);
            } else {
                b = checked_add(b, sign * c, *this);
            }
        }
        if (first) fail("empty factor");
        return {a, b};
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

LinearSystem parse_form(std::string_view text) { return Parser(text).parse(); }

}  // namespace envsieve::forms
