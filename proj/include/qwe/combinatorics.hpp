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

#ifndef QWE_COMBINATORICS_HPP
#define QWE_COMBINATORICS_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qwe {

mpz_class binomial(long n, long k);

/// Row n of Pascal's triangle, entries C(n, 0) .. C(n, n).
std::vector<mpz_class> binomial_row(int n);

double binomial_double(int n, int k);

mpz_class pow2(unsigned long e);
mpq_class pow_q(const mpq_class &base, unsigned long e);

/// Correctly scaled conversion that stays finite where mpq_get_d would need
/// intermediate values outside double range. Returns +-inf on overflow.
double to_double(const mpq_class &q);
double to_double(const mpz_class &num, const mpz_class &den);
/// num * 2^-shift without forming the power.
double to_double_shifted(const mpz_class &num, unsigned long shift);

/// Exact value of a decimal literal ("0.25", "1e-3", "-3/4", "7").
mpq_class parse_rational(std::string_view text);
std::string rational_string(const mpq_class &q);

/// Shortest decimal that round-trips to the same double.
std::string shortest_double(double v);

}  // namespace qwe

#endif
