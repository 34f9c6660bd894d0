// Copyright 2026 The qwe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwe/combinatorics.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "qwe/errors.hpp"

namespace qwe {

mpz_class binomial(long n, long k) {
    mpz_class r;
    if (k < 0 || n < 0 || k > n) {
        return r;
    }
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::vector<mpz_class> binomial_row(int n) {
    std::vector<mpz_class> row(static_cast<size_t>(n) + 1);
    row[0] = 1;
    for (int k = 1; k <= n; k++) {
        row[k] = row[k - 1] * (n - k + 1);
        mpz_divexact_ui(row[k].get_mpz_t(), row[k].get_mpz_t(), static_cast<unsigned long>(k));
    }
    return row;
}

double binomial_double(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

mpz_class pow2(unsigned long e) {
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

mpq_class pow_q(const mpq_class &base, unsigned long e) {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

double to_double(const mpz_class &num, const mpz_class &den) {
    if (sgn(num) == 0) {
        return 0.0;
    }
    long en = 0;
    long ed = 0;
    double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
    double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
    return std::ldexp(mn / md, static_cast<int>(en - ed));
}

double to_double(const mpq_class &q) {
    return to_double(q.get_num(), q.get_den());
}

double to_double_shifted(const mpz_class &num, unsigned long shift) {
    if (sgn(num) == 0) {
        return 0.0;
    }
    long e = 0;
    double m = mpz_get_d_2exp(&e, num.get_mpz_t());
    return std::ldexp(m, static_cast<int>(e - static_cast<long>(shift)));
}

mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) {
        start++;
    }
    s = s.substr(start);
    if (s.empty()) {
        fail_contract("empty numeric literal");
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || sgn(q.get_den()) == 0) {
            fail_contract("malformed rational literal '" + s + "'");
        }
        q.canonicalize();
        return q;
    }
    bool negative = false;
    size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        pos++;
    }
    std::string digits;
    long exponent = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (; pos < s.size(); pos++) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) {
                exponent--;
            }
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            long e = 0;
            size_t at = pos + 1;
            if (at < s.size() && s[at] == '+') {
                at++;
            }
            auto r = std::from_chars(s.data() + at, s.data() + s.size(), e);
            if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
                fail_contract("malformed exponent in '" + s + "'");
            }
            exponent += e;
            pos = s.size();
            break;
        } else {
            fail_contract("malformed numeric literal '" + s + "'");
        }
    }
    if (!seen_digit) {
        fail_contract("malformed numeric literal '" + s + "'");
    }
    mpz_class mantissa(digits, 10);
    mpq_class q(mantissa);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0) {
        q *= scale;
    } else {
        q /= scale;
    }
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

std::string rational_string(const mpq_class &q) {
    return q.get_str(10);
}

std::string shortest_double(double v) {
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

}  // namespace qwe
