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

#include "qwe/noise.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/transforms.hpp"

namespace qwe {

namespace {

void require_probability(double p, std::string_view what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        fail_contract(std::string(what) + " must lie in [0, 1], got " + shortest_double(p));
    }
}

void require_probability(const mpq_class &p, std::string_view what) {
    if (p < 0 || p > 1) {
        fail_contract(std::string(what) + " must lie in [0, 1], got " + p.get_str());
    }
}

std::vector<mpq_class> exact_entries(const EnumeratorVector &v) {
    if (v.is_exact()) {
        return v.exact_values();
    }
    std::vector<mpq_class> out;
    out.reserve(v.size());
    for (double x : v.values()) {
        out.emplace_back(x);
    }
    return out;
}

// margin(p) = constant + sum_j weight_j (1-p)^(step * j)
struct MarginPolynomial {
    mpq_class constant;
    std::vector<mpq_class> weights;
    int step = 2;

    mpq_class at(const mpq_class &p) const {
        mpq_class x = pow_q(1 - p, static_cast<unsigned long>(step));
        mpq_class acc = 0;
        for (size_t j = weights.size(); j-- > 0;) {
            acc = acc * x + weights[j];
        }
        return acc + constant;
    }
};

MarginPolynomial margin_polynomial(const EnumeratorVector &sld, Criterion c, const mpq_class &bound) {
    require_kind(sld, VectorKind::sld, "criterion margin");
    const int n = sld.n();
    std::vector<mpq_class> a = exact_entries(sld);
    MarginPolynomial poly;
    poly.weights.assign(n + 1, mpq_class(0));
    mpq_class inv2n(1, pow2(n));
    inv2n.canonicalize();
    switch (c) {
        case Criterion::n_body:
            poly.constant = -inv2n;
            poly.weights[n] = a[n];
            break;
        case Criterion::purity:
            // a'_(n-1) = sum_j 2 (n - j) / n * a_j
            for (int j = 0; j <= n; j++) {
                mpq_class w(2 * j - n, n);
                w.canonicalize();
                poly.weights[j] = w * a[j];
            }
            break;
        case Criterion::concurrence: {
            // tpd_n = 2^-n sum_j 3^(n-j) a_j
            poly.constant = inv2n;
            mpz_class three = 1;
            for (int j = n; j >= 0; j--) {
                poly.weights[j] = (1 - inv2n - mpq_class(three) * inv2n) * a[j];
                three *= 3;
            }
            break;
        }
        case Criterion::fidelity:
            poly.constant = -bound;
            poly.weights = a;
            poly.step = 1;
            break;
    }
    return poly;
}

// The 1/2 - Psi witness certifies GME only for genuinely multipartite entangled stabilizer states.
bool gme_stabilizer(const StateFamily &f) {
    if (f.n < 2) {
        return false;
    }
    switch (f.tag) {
        case FamilyTag::bell_pairs:
            return f.n == 2;
        case FamilyTag::ghz:
            return f.e == f.n;
        case FamilyTag::cycle_graph:
            return f.e == f.n && f.n >= 3;
        case FamilyTag::line_graph:
        case FamilyTag::ame6:
            return true;
        default:
            return false;
    }
}

}  // namespace

void NoiseModel::validate() const {
    require_probability(p, "noise strength p");
    require_probability(circuit_error_rate, "gate error rate");
}

EnumeratorVector depolarize_sld(const EnumeratorVector &sld, const mpq_class &p) {
    require_kind(sld, VectorKind::sld, "depolarize_sld");
    require_probability(p, "noise strength p");
    if (!sld.is_exact()) {
        return depolarize_sld(sld, to_double(p));
    }
    const mpq_class damp = (1 - p) * (1 - p);
    mpq_class f = 1;
    std::vector<mpq_class> out(sld.exact_values());
    for (auto &v : out) {
        v *= f;
        f *= damp;
    }
    return EnumeratorVector(VectorKind::sld, std::move(out));
}

EnumeratorVector depolarize_sld(const EnumeratorVector &sld, double p) {
    require_kind(sld, VectorKind::sld, "depolarize_sld");
    require_probability(p, "noise strength p");
    const double damp = (1 - p) * (1 - p);
    double f = 1;
    std::vector<double> out(sld.values());
    for (auto &v : out) {
        v *= f;
        f *= damp;
    }
    return EnumeratorVector(VectorKind::sld, std::move(out));
}

double purity_after_noise(const EnumeratorVector &sld, double p) {
    require_kind(sld, VectorKind::sld, "purity_after_noise");
    require_probability(p, "noise strength p");
    const double damp = (1 - p) * (1 - p);
    long double acc = 0;
    for (size_t i = sld.size(); i-- > 0;) {
        acc = acc * damp + sld[i];
    }
    return static_cast<double>(acc);
}

double overlap_after_noise(const EnumeratorVector &sld, double p) {
    require_kind(sld, VectorKind::sld, "overlap_after_noise");
    require_probability(p, "noise strength p");
    long double acc = 0;
    for (size_t i = sld.size(); i-- > 0;) {
        acc = acc * (1 - p) + sld[i];
    }
    return static_cast<double>(acc);
}

NoisyEnumerators noisy_enumerators(const EnumeratorVector &sld, const mpq_class &p) {
    NoisyEnumerators out;
    out.sld = depolarize_sld(sld, p);
    out.apd = convert(out.sld, VectorKind::apd);
    out.tpd = convert(out.sld, VectorKind::tpd);
    return out;
}

NoisyEnumerators noisy_family_enumerators(const StateFamily &family, const mpq_class &p) {
    return noisy_enumerators(family_sld(family), p);
}

DenseState depolarize_dense(const DenseState &state, double p) {
    require_probability(p, "noise strength p");
    const int n = state.n();
    const Eigen::Index d = state.dim();
    Eigen::MatrixXcd rho = state.matrix();
    for (int q = 0; q < n; q++) {
        const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
        Eigen::MatrixXcd next(d, d);
        for (Eigen::Index a = 0; a < d; a++) {
            for (Eigen::Index b = 0; b < d; b++) {
                std::complex<double> v = (1 - p) * rho(a, b);
                if (((a ^ b) & bit) == 0) {
                    v += 0.5 * p * (rho(a, b) + rho(a ^ bit, b ^ bit));
                }
                next(a, b) = v;
            }
        }
        rho = std::move(next);
    }
    return DenseState(n, std::move(rho), false);
}

std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::n_body:
            return "n_body";
        case Criterion::purity:
            return "purity";
        case Criterion::concurrence:
            return "concurrence";
        case Criterion::fidelity:
            return "fidelity";
    }
    return "?";
}

Criterion parse_criterion(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return ch == '-' ? '_' : std::tolower(ch); });
    if (s == "n_body" || s == "nbody") return Criterion::n_body;
    if (s == "purity") return Criterion::purity;
    if (s == "concurrence") return Criterion::concurrence;
    if (s == "fidelity") return Criterion::fidelity;
    fail_contract("unknown criterion '" + std::string(name) + "' (expected n-body, purity, concurrence, fidelity)");
}

mpq_class criterion_margin(const EnumeratorVector &sld, Criterion c, const mpq_class &fidelity_bound) {
    return margin_polynomial(sld, c, fidelity_bound).at(0);
}

mpq_class criterion_margin_at(const EnumeratorVector &sld, Criterion c, const mpq_class &p,
                              const mpq_class &fidelity_bound) {
    require_probability(p, "noise strength p");
    return margin_polynomial(sld, c, fidelity_bound).at(p);
}

ThresholdResult noise_threshold(const EnumeratorVector &sld, Criterion c, const ThresholdOptions &options) {
    if (options.grid_points < 1) {
        fail_contract("noise_threshold: grid_points must be positive");
    }
    if (!(options.tolerance > 0)) {
        fail_contract("noise_threshold: tolerance must be positive");
    }
    const MarginPolynomial poly = margin_polynomial(sld, c, options.fidelity_bound.value_or(mpq_class(1, 2)));
    ThresholdResult r;
    auto certifies = [&](const mpq_class &p) {
        r.evaluations++;
        return poly.at(p) > 0;
    };
    const int g = options.grid_points;
    int last = -1;
    bool gap = false;
    for (int k = 0; k <= g; k++) {
        mpq_class p(k, g);
        p.canonicalize();
        if (certifies(p)) {
            if (last != k - 1) {
                gap = true;
            }
            last = k;
        }
    }
    r.non_monotone = gap;
    if (last < 0) {
        r.never_fires = true;
        return r;
    }
    if (last == g) {
        r.threshold = 1.0;
        return r;
    }
    mpq_class lo(last, g), hi(last + 1, g);
    lo.canonicalize();
    hi.canonicalize();
    const mpq_class tol(options.tolerance / 8);
    while (hi - lo > tol) {
        mpq_class mid = (lo + hi) / 2;
        if (certifies(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    r.threshold = to_double((lo + hi) / 2);
    return r;
}

ThresholdResult noise_threshold(const StateFamily &family, Criterion c, const ThresholdOptions &options) {
    if (c == Criterion::fidelity && !family.is_stabilizer() && !options.fidelity_bound) {
        fail_contract("fidelity criterion for " + family.descriptor() +
                      " needs an explicit fidelity bound (0.5 applies to stabilizer states only)");
    }
    if (c == Criterion::fidelity && !options.fidelity_bound && !gme_stabilizer(family)) {
        ThresholdResult r;
        r.never_fires = true;
        return r;
    }
    return noise_threshold(family_sld(family), c, options);
}

}  // namespace qwe
