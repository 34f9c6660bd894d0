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

// qwe: batch front end for the enumerator library. Every subcommand writes one
// JSON (or CSV) artifact that embeds the tool version, the full configuration,
// the seed and the precision mode.

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qwe/analysis.hpp"
#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/estimation.hpp"
#include "qwe/io.hpp"
#include "qwe/noise.hpp"
#include "qwe/sampler.hpp"
#include "qwe/states.hpp"
#include "qwe/transforms.hpp"

using namespace qwe;
using io::Json;

namespace {

constexpr int kExactDefaultLimit = 64;

struct Options {
    std::vector<int> n;
    int e = -1;
    std::string family;
    std::string code;
    std::string in;
    std::string out = "-";
    std::string format = "json";
    std::string precision;
    std::string kind;
    std::string which;
    std::string p = "0";
    std::string mix = "1/2";
    double gate_error = 0.0;
    uint64_t shots = 10000;
    std::optional<uint64_t> seed;
    bool postselect = false;
    bool correct = false;
    std::string mitigate_ref;
    std::string ref_family = "product";
    int bootstrap = 1000;
    double ci = 0.95;
    double target_var = 1e-4;
    double eps = 0.01;
    double delta = 0.05;
    std::string criterion = "all";
    std::optional<std::string> fidelity_bound;
    double tolerance = 1e-4;
    unsigned threads = 0;
};

mpz_class pow10_mpz(long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return r;
}

mpq_class parse_exact(const std::string &text) {
    if (text.find('/') != std::string::npos) {
        try {
            mpq_class q(text);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument &) {
            fail_contract("cannot parse '" + text + "' as a rational");
        }
    }
    // Decimal literal read exactly: digits before and after the point.
    std::string digits;
    long exponent = 0;
    bool seen_point = false, negative = false;
    size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        negative = text[0] == '-';
        i = 1;
    }
    for (; i < text.size(); i++) {
        char ch = text[i];
        if (ch == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            if (seen_point) exponent--;
        } else if (ch == 'e' || ch == 'E') {
            try {
                exponent += std::stol(text.substr(i + 1));
            } catch (const std::exception &) {
                fail_contract("cannot parse '" + text + "' as a number");
            }
            break;
        } else {
            fail_contract("cannot parse '" + text + "' as a number");
        }
    }
    if (digits.empty()) fail_contract("cannot parse '" + text + "' as a number");
    mpz_class num(digits);
    mpq_class q = exponent >= 0 ? mpq_class(num * pow10_mpz(exponent)) : mpq_class(num, pow10_mpz(-exponent));
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

int single_n(const Options &o) {
    if (o.n.size() != 1) fail_contract("this command takes exactly one --n");
    return o.n[0];
}

bool exact_mode(const Options &o, int n) {
    if (o.precision == "exact") return true;
    if (o.precision == "f64") return false;
    if (!o.precision.empty()) fail_contract("unknown precision '" + o.precision + "' (expected exact or f64)");
    if (n > kExactDefaultLimit) {
        std::cerr << "qwe: warning: n = " << n << " exceeds " << kExactDefaultLimit
                  << ", using f64 precision (pass --precision exact to override)\n";
        return false;
    }
    return true;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::string precision_name(bool exact) { return exact ? "exact" : "f64"; }

Json config_json(const std::string &command, const Options &o) {
    Json c;
    c["command"] = command;
    if (!o.n.empty()) c["n"] = o.n;
    if (o.e >= 0) c["e"] = o.e;
    if (!o.family.empty()) c["family"] = o.family;
    if (!o.code.empty()) c["code"] = o.code;
    if (!o.in.empty()) c["in"] = o.in;
    c["format"] = o.format;
    if (!o.precision.empty()) c["precision"] = o.precision;
    if (!o.kind.empty()) c["kind"] = o.kind;
    if (!o.which.empty()) c["which"] = o.which;
    c["p"] = o.p;
    c["mix"] = o.mix;
    c["gate_error"] = o.gate_error;
    if (command == "sample") c["shots"] = o.shots;
    if (command == "estimate") {
        c["postselect"] = o.postselect;
        c["correct"] = o.correct;
        c["bootstrap"] = o.bootstrap;
        c["ci"] = o.ci;
        if (!o.mitigate_ref.empty()) {
            c["mitigate_ref"] = o.mitigate_ref;
            c["ref_family"] = o.ref_family;
        }
    }
    if (command == "plan") {
        c["target_var"] = o.target_var;
        c["eps"] = o.eps;
        c["delta"] = o.delta;
    }
    if (command == "thresholds") {
        c["criterion"] = o.criterion;
        c["tolerance"] = o.tolerance;
        if (o.fidelity_bound) c["fidelity_bound"] = *o.fidelity_bound;
    }
    return c;
}

void emit(const Options &o, const std::string &content) {
    if (o.out == "-" || o.out.empty()) {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw IoError("write to stdout failed");
    } else {
        io::write_atomic(o.out, content);
    }
}

void emit_json(const Options &o, const std::string &command, std::optional<uint64_t> seed, bool exact, Json data) {
    emit(o, io::envelope(command, config_json(command, o), seed, precision_name(exact), std::move(data)).dump(2) + "\n");
}

StateFamily family_of(const Options &o, int n) {
    return StateFamily::parse(o.family, n, o.e, parse_exact(o.mix));
}

StabilizerGroup load_code(const std::string &path) {
    std::string text = io::read_file(path);
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return io::group_from_json(io::read_json(path));
    return StabilizerGroup::parse(text);
}

EnumeratorVector maybe_float(const EnumeratorVector &v, bool exact) {
    return exact ? v : v.to_float();
}

// ---- transform ------------------------------------------------------------

int cmd_transform(const Options &o) {
    if (o.kind == "matrix") {
        const int n = single_n(o);
        const bool exact = exact_mode(o, n);
        auto m = build_transform(parse_transform_kind(o.which), n, exact ? Precision::exact : Precision::float64);
        if (o.format == "csv") {
            emit(o, io::to_csv(m));
        } else {
            emit_json(o, "transform", std::nullopt, exact, io::to_json(m));
        }
        return 0;
    }
    const auto pos = o.kind.find("-to-");
    if (pos == std::string::npos) {
        fail_contract("--kind must be 'matrix' or '<from>-to-<to>', e.g. sld-to-apd");
    }
    if (o.in.empty()) fail_contract("transform needs --in");
    const auto from = parse_vector_kind(o.kind.substr(0, pos));
    const auto to = parse_vector_kind(o.kind.substr(pos + 4));
    auto input = io::enumerator_from_json(io::read_json(o.in));
    if (input.kind() != from) {
        fail_contract("input vector has kind " + std::string(to_string(input.kind())) + ", --kind expects " +
                      std::string(to_string(from)));
    }
    const bool exact = input.is_exact() && o.precision != "f64";
    if (!exact) input = input.to_float();
    auto output = convert(input, to);
    auto back = convert(output, from);
    Json data;
    data["input"] = io::to_json(input);
    data["output"] = io::to_json(output);
    data["round_trip_residual"] = max_abs_diff(back.to_float(), input.to_float());
    if (exact) data["round_trip_exact"] = back.exact_values() == input.exact_values();
    if (o.format == "csv") {
        emit(o, io::to_csv(output));
    } else {
        emit_json(o, "transform", std::nullopt, exact, std::move(data));
    }
    return 0;
}

// ---- enumerate ------------------------------------------------------------

int cmd_enumerate(const Options &o) {
    const mpq_class p = parse_exact(o.p);
    if (!o.code.empty()) {
        auto code = load_code(o.code);
        auto ce = code_enumerators(code);
        Json data = io::to_json(ce);
        auto d = code_distance(ce);
        data["distance"] = {{"value", d.distance}, {"defined", d.defined}, {"note", d.note}};
        if (p != 0) {
            auto noisy = noisy_enumerators(ce.sld(), p);
            data["noisy"] = {{"sld", io::to_json(noisy.sld)}, {"apd", io::to_json(noisy.apd)}, {"tpd", io::to_json(noisy.tpd)}};
        }
        if (o.format == "csv") {
            std::string csv = "i,A,B,A_shadow\n";
            for (int i = 0; i <= ce.n; i++) {
                csv += std::to_string(i) + "," + std::to_string(ce.A[i]) + "," + std::to_string(ce.B[i]) + "," +
                       std::to_string(ce.A_shadow[i]) + "\n";
            }
            emit(o, csv);
        } else {
            emit_json(o, "enumerate", std::nullopt, true, std::move(data));
        }
        return 0;
    }
    if (o.family.empty()) fail_contract("enumerate needs --family or --code");
    const int n = single_n(o);
    const bool exact = exact_mode(o, n);
    auto fam = family_of(o, n);
    auto noisy = noisy_family_enumerators(fam, p);
    auto sld = maybe_float(noisy.sld, exact), apd = maybe_float(noisy.apd, exact), tpd = maybe_float(noisy.tpd, exact);
    if (o.format == "csv") {
        std::string csv = "i,sld,apd,tpd\n";
        for (int i = 0; i <= n; i++) {
            csv += std::to_string(i) + "," + io::format_double(sld[i]) + "," + io::format_double(apd[i]) + "," +
                   io::format_double(tpd[i]) + "\n";
        }
        emit(o, csv);
        return 0;
    }
    Json data;
    data["family"] = fam.descriptor();
    data["natural"] = io::to_json(maybe_float(family_enumerators(fam), exact));
    data["sld"] = io::to_json(sld);
    data["apd"] = io::to_json(apd);
    data["tpd"] = io::to_json(tpd);
    data["dual_sld"] = io::to_json(convert(sld, VectorKind::dual_sld));
    data["dual_apd"] = io::to_json(convert(sld, VectorKind::dual_apd));
    data["dual_tpd"] = io::to_json(convert(sld, VectorKind::dual_tpd));
    emit_json(o, "enumerate", std::nullopt, exact, std::move(data));
    return 0;
}

// ---- sample ---------------------------------------------------------------

int cmd_sample(const Options &o) {
    Options opts = o;
    if (!opts.seed) {
        std::random_device rd;
        opts.seed = (static_cast<uint64_t>(rd()) << 32) | rd();
        std::cerr << "qwe: no --seed given, using " << *opts.seed << "\n";
    }
    NoiseModel noise;
    noise.p = to_double(parse_exact(o.p));
    noise.circuit_error_rate = o.gate_error;
    noise.validate();
    SimulationOptions sim;
    sim.threads = o.threads;
    BellSampleSet s;
    if (!o.code.empty()) {
        auto code = load_code(o.code);
        if (code.str() == StabilizerGroup::steane().str()) {
            s = simulate_steane(noise, o.shots, *opts.seed, sim);
        } else {
            s = simulate_code(code, noise, o.shots, *opts.seed, sim);
        }
    } else {
        if (o.family.empty()) fail_contract("sample needs --family or --code");
        s = sample_family(family_of(o, single_n(o)), noise, o.shots, *opts.seed, sim);
    }
    Json config = config_json("sample", opts);
    s.metadata = Json{{"tool", "qwe"}, {"version", QWE_VERSION}, {"config", config}}.dump();
    if (o.format == "bin") {
        std::ostringstream buf;
        io::write_samples_binary(s, buf);
        emit(opts, buf.str());
    } else if (o.format == "csv") {
        emit(opts, io::histogram_csv(s));
    } else {
        emit_json(opts, "sample", opts.seed, false, io::to_json(s));
    }
    return 0;
}

// ---- estimate -------------------------------------------------------------

MitigationModel load_mitigation(const Options &o, int n) {
    Json doc = io::read_json(o.mitigate_ref);
    const Json &d = io::payload(doc);
    if (d.contains("lambdas") || d.contains("mitigation")) {
        if (!d.contains("estimate")) return io::mitigation_from_json(doc);
    }
    // A reference run: its raw SLD against the ideal reference family.
    EstimationReport ref = io::estimation_from_json(d.contains("estimate") ? d.at("estimate") : d);
    if (ref.n != n) fail_contract("mitigation reference has n = " + std::to_string(ref.n));
    auto ideal = family_sld(StateFamily::parse(o.ref_family, n));
    return fit_mitigation(ref[VectorKind::sld].vector(), ideal.to_float(), o.ref_family);
}

int cmd_estimate(const Options &o) {
    if (o.in.empty()) fail_contract("estimate needs --in");
    BellSampleSet s = io::read_samples(o.in);
    double retained = 1.0;
    std::optional<StabilizerGroup> code;
    if (!o.code.empty()) code = load_code(o.code);
    if ((o.postselect || o.correct) && !code) fail_contract("--postselect and --correct need --code");
    if (o.correct) s = correct(s, LookupDecoder(*code));
    if (o.postselect) {
        auto ps = postselect(s, *code);
        s = std::move(ps.kept);
        retained = ps.retained_fraction;
        if (s.shots == 0) fail_contract("postselection kept no shots");
    }
    EstimatorTable table(s.n);
    EstimationOptions eo;
    eo.bootstrap_resamples = o.bootstrap;
    eo.ci_level = o.ci;
    eo.seed = o.seed.value_or(s.seed);
    auto rep = estimate_enumerators(s, table, eo);
    if (rep.precision_warning) {
        std::cerr << "qwe: warning: n = " << s.n << " exceeds " << EstimatorTable::kFloatSafeN
                  << "; bootstrap intervals use float tables and may lose significance\n";
    }
    Json data;
    data["estimate"] = io::to_json(rep);
    data["samples"] = {{"in", o.in}, {"seed", s.seed}, {"provenance", s.provenance}};
    data["retained_fraction"] = retained;
    data["corrected"] = o.correct;
    data["postselected"] = o.postselect;
    if (!o.mitigate_ref.empty()) {
        auto model = load_mitigation(o, s.n);
        auto mitigated = mitigate(rep[VectorKind::sld].vector(), model);
        data["mitigation"] = io::to_json(model);
        data["mitigated"] = {{"sld", io::to_json(mitigated)},
                             {"apd", io::to_json(convert(mitigated, VectorKind::apd))},
                             {"tpd", io::to_json(convert(mitigated, VectorKind::tpd))}};
    } else {
        data["mitigation"] = nullptr;
    }
    if (code) {
        auto d = code_distance(rep[VectorKind::sld].vector(), rep[VectorKind::dual_sld].vector(), code->k(), true);
        data["distance"] = {{"value", d.distance}, {"defined", d.defined}, {"note", d.note}};
    }
    if (o.format == "csv") {
        std::string csv = "kind,i,value,lower,upper,std_error\n";
        for (const auto &v : rep.vectors) {
            for (int i = 0; i <= rep.n; i++) {
                csv += std::string(to_string(v.kind)) + "," + std::to_string(i) + "," + io::format_double(v.value[i]) +
                       "," + io::format_double(v.lower[i]) + "," + io::format_double(v.upper[i]) + "," +
                       io::format_double(v.std_error[i]) + "\n";
            }
        }
        emit(o, csv);
    } else {
        emit_json(o, "estimate", eo.seed, false, std::move(data));
    }
    return 0;
}

// ---- analyze --------------------------------------------------------------

int cmd_analyze(const Options &o) {
    CriteriaReport report;
    EnumeratorVector tpd;
    std::string source;
    bool exact = false;
    if (!o.in.empty()) {
        Json doc = io::read_json(o.in);
        const Json &d = io::payload(doc);
        if (d.contains("estimate") || d.contains("vectors")) {
            auto est = io::estimation_from_json(d.contains("estimate") ? d.at("estimate") : d);
            report = criteria_report(est);
            tpd = est[VectorKind::tpd].vector();
            source = "estimated";
        } else {
            auto v = io::enumerator_from_json(d.contains("sld") && !d.contains("values") ? d.at("sld") : d);
            auto sld = convert(v, VectorKind::sld);
            double purity = sld.sum();
            report = criteria_report(sld, convert(sld, VectorKind::apd), convert(sld, VectorKind::tpd), purity);
            tpd = convert(sld, VectorKind::tpd);
            source = "exact";
            exact = v.is_exact();
        }
    } else if (!o.family.empty()) {
        const int n = single_n(o);
        exact = exact_mode(o, n);
        auto noisy = noisy_family_enumerators(family_of(o, n), parse_exact(o.p));
        auto sld = maybe_float(noisy.sld, exact);
        report = criteria_report(sld, maybe_float(noisy.apd, exact), maybe_float(noisy.tpd, exact),
                                 to_double(exact ? sld.exact_sum() : mpq_class(sld.sum())));
        tpd = maybe_float(noisy.tpd, exact);
        source = "exact";
    } else {
        fail_contract("analyze needs --in or --family");
    }
    Json data;
    data["source"] = source;
    data["criteria"] = io::to_json(report);
    // Estimated TPDs may carry small negative entries; structure checks need a distribution.
    bool distribution = true;
    for (size_t i = 0; i < tpd.size(); i++) distribution = distribution && tpd[i] >= -1e-12;
    if (distribution) {
        data["moments"] = io::to_json(tpd_moments(tpd));
        data["admissibility_violations"] = io::to_json(tpd_admissibility(tpd));
    }
    if (o.format == "csv") {
        std::string csv = "criterion,margin,tolerance,entangled\n";
        for (const auto &v : report.verdicts) {
            csv += v.criterion + "," + io::format_double(v.margin) + "," + io::format_double(v.tolerance) + "," +
                   (v.entangled ? "true" : "false") + "\n";
        }
        emit(o, csv);
    } else {
        emit_json(o, "analyze", std::nullopt, exact, std::move(data));
    }
    return 0;
}

// ---- plan -----------------------------------------------------------------

int cmd_plan(const Options &o) {
    if (o.n.empty()) fail_contract("plan needs at least one --n");
    Json rows = Json::array();
    std::string csv = "family,n,target_var,samples_required,hoeffding_tpd,hoeffding_apd,hoeffding_sld_max\n";
    for (int n : o.n) {
        Json row;
        row["n"] = n;
        double required = -1;
        if (!o.family.empty()) {
            auto fam = family_of(o, n);
            auto tpd = noisy_family_enumerators(fam, parse_exact(o.p)).tpd;
            auto var = sld_variance(tpd, 1.0);
            required = std::ceil(var.total / o.target_var);
            row["family"] = fam.descriptor();
            row["variance_per_shot"] = var.total;
            row["samples_required"] = required;
        }
        row["hoeffding"] = {
            {"tpd", hoeffding_samples(VectorKind::tpd, n, o.eps, o.delta)},
            {"apd", hoeffding_samples(VectorKind::apd, n, o.eps, o.delta)},
            {"sld_max", hoeffding_samples(VectorKind::sld, n, o.eps, o.delta)},
            {"tpd_simultaneous", hoeffding_samples(VectorKind::tpd, n, o.eps, o.delta, true)},
            {"apd_simultaneous", hoeffding_samples(VectorKind::apd, n, o.eps, o.delta, true)},
            {"sld_simultaneous", hoeffding_samples(VectorKind::sld, n, o.eps, o.delta, true)},
        };
        Json sld_i = Json::array();
        for (int i = 0; i <= n; i++) sld_i.push_back(hoeffding_samples(VectorKind::sld, n, o.eps, o.delta, false, i));
        row["hoeffding"]["sld_per_index"] = std::move(sld_i);
        csv += csv_field(o.family.empty() ? std::string("") : family_of(o, n).descriptor()) + "," + std::to_string(n) + "," +
               io::format_double(o.target_var) + "," + io::format_double(required) + "," +
               io::format_double(row["hoeffding"]["tpd"].get<double>()) + "," +
               io::format_double(row["hoeffding"]["apd"].get<double>()) + "," +
               io::format_double(row["hoeffding"]["sld_max"].get<double>()) + "\n";
        rows.push_back(std::move(row));
    }
    if (o.format == "csv") {
        emit(o, csv);
    } else {
        emit_json(o, "plan", std::nullopt, true, Json{{"rows", rows}});
    }
    return 0;
}

// ---- thresholds -----------------------------------------------------------

int cmd_thresholds(const Options &o) {
    if (o.family.empty() || o.n.empty()) fail_contract("thresholds needs --family and --n");
    std::vector<Criterion> criteria;
    if (o.criterion == "all") {
        criteria = {Criterion::n_body, Criterion::purity, Criterion::concurrence};
        if (o.fidelity_bound) criteria.push_back(Criterion::fidelity);
    } else {
        criteria = {parse_criterion(o.criterion)};
    }
    ThresholdOptions to;
    to.tolerance = o.tolerance;
    if (o.fidelity_bound) to.fidelity_bound = parse_exact(*o.fidelity_bound);
    Json rows = Json::array();
    std::string csv = "family,n,criterion,threshold\n";
    for (int n : o.n) {
        auto fam = family_of(o, n);
        for (auto c : criteria) {
            auto r = noise_threshold(fam, c, to);
            rows.push_back({{"family", fam.descriptor()},
                            {"n", n},
                            {"criterion", std::string(to_string(c))},
                            {"threshold", r.threshold},
                            {"never_fires", r.never_fires},
                            {"non_monotone", r.non_monotone}});
            csv += csv_field(fam.descriptor()) + "," + std::to_string(n) + "," + std::string(to_string(c)) + "," +
                   io::format_double(r.threshold) + "\n";
        }
    }
    if (o.format == "csv") {
        emit(o, csv);
    } else {
        emit_json(o, "thresholds", std::nullopt, true, Json{{"rows", rows}});
    }
    return 0;
}

void add_common(CLI::App *cmd, Options &o) {
    cmd->add_option("--out,-o", o.out, "Output path ('-' for stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "bin"}));
    cmd->add_option("--precision", o.precision, "exact or f64 (default: exact up to n = 64)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum weight enumerators: transforms, Bell-sampling simulation, estimation and analysis"};
    app.set_version_flag("--version", std::string("qwe ") + QWE_VERSION);
    app.require_subcommand(1);
    Options o;

    auto *transform = app.add_subcommand("transform", "Convert an enumerator vector or export a transform matrix");
    transform->add_option("--kind", o.kind, "'matrix' or '<from>-to-<to>' (e.g. sld-to-apd)")->required();
    transform->add_option("--which", o.which, "Matrix name for --kind matrix (M, M_prime, T_tilde_inv, ...)");
    transform->add_option("--n", o.n, "Qubit count for --kind matrix");
    transform->add_option("--in", o.in, "Input vector JSON");
    add_common(transform, o);

    auto *enumerate = app.add_subcommand("enumerate", "Exact enumerators of a state family or stabilizer code");
    enumerate->add_option("--family", o.family, "State family name");
    enumerate->add_option("--code", o.code, "Stabilizer code file (text or JSON)");
    enumerate->add_option("--n", o.n, "Qubit count");
    enumerate->add_option("--e", o.e, "Family parameter (ghz/cycle size, Dicke excitations)");
    enumerate->add_option("--mix", o.mix, "Weight of the superposition/mixture families");
    enumerate->add_option("--p", o.p, "Local depolarizing strength (exact decimal or p/q)");
    add_common(enumerate, o);

    auto *sample = app.add_subcommand("sample", "Simulate two-copy Bell sampling");
    sample->add_option("--family", o.family, "State family name");
    sample->add_option("--code", o.code, "Stabilizer code file");
    sample->add_option("--n", o.n, "Qubit count");
    sample->add_option("--e", o.e, "Family parameter");
    sample->add_option("--mix", o.mix, "Weight of the superposition/mixture families");
    sample->add_option("--shots", o.shots, "Number of shots");
    sample->add_option("--seed", o.seed, "RNG seed (generated and recorded when absent)");
    sample->add_option("--p", o.p, "Local depolarizing strength before readout");
    sample->add_option("--gate-error", o.gate_error, "Depolarizing rate after every gate");
    sample->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    add_common(sample, o);

    auto *estimate = app.add_subcommand("estimate", "Estimate all six enumerator vectors from samples");
    estimate->add_option("--in", o.in, "Sample file (JSON or binary)")->required();
    estimate->add_option("--code", o.code, "Code file for --postselect/--correct and distance");
    estimate->add_flag("--postselect", o.postselect, "Keep only zero-syndrome shots");
    estimate->add_flag("--correct", o.correct, "Apply lookup-table corrections");
    estimate->add_option("--mitigate-ref", o.mitigate_ref, "Mitigation model or reference estimate file");
    estimate->add_option("--ref-family", o.ref_family, "Ideal family of the mitigation reference run");
    estimate->add_option("--bootstrap", o.bootstrap, "Bootstrap resamples");
    estimate->add_option("--ci", o.ci, "Confidence level");
    estimate->add_option("--seed", o.seed, "Bootstrap seed (default: the sample seed)");
    add_common(estimate, o);

    auto *analyze = app.add_subcommand("analyze", "Entanglement criteria and TPD structure checks");
    analyze->add_option("--in", o.in, "Estimate or vector file");
    analyze->add_option("--family", o.family, "State family name");
    analyze->add_option("--n", o.n, "Qubit count");
    analyze->add_option("--e", o.e, "Family parameter");
    analyze->add_option("--mix", o.mix, "Weight of the superposition/mixture families");
    analyze->add_option("--p", o.p, "Local depolarizing strength");
    add_common(analyze, o);

    auto *plan = app.add_subcommand("plan", "Sample-complexity planning");
    plan->add_option("--family", o.family, "State family name");
    plan->add_option("--n", o.n, "Qubit counts")->expected(1, -1);
    plan->add_option("--e", o.e, "Family parameter");
    plan->add_option("--mix", o.mix, "Weight of the superposition/mixture families");
    plan->add_option("--p", o.p, "Local depolarizing strength");
    plan->add_option("--target-var", o.target_var, "Target total SLD variance");
    plan->add_option("--eps", o.eps, "Hoeffding accuracy");
    plan->add_option("--delta", o.delta, "Hoeffding failure probability");
    add_common(plan, o);

    auto *thresholds = app.add_subcommand("thresholds", "Noise thresholds of the entanglement criteria");
    thresholds->add_option("--family", o.family, "State family name");
    thresholds->add_option("--n", o.n, "Qubit counts")->expected(1, -1);
    thresholds->add_option("--e", o.e, "Family parameter");
    thresholds->add_option("--mix", o.mix, "Weight of the superposition/mixture families");
    thresholds->add_option("--criterion", o.criterion, "n-body, purity, concurrence, fidelity or all");
    thresholds->add_option("--fidelity-bound", o.fidelity_bound, "Fidelity bound (exact decimal or p/q)");
    thresholds->add_option("--tolerance", o.tolerance, "Bisection tolerance");
    add_common(thresholds, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*transform) return cmd_transform(o);
        if (*enumerate) return cmd_enumerate(o);
        if (*sample) return cmd_sample(o);
        if (*estimate) return cmd_estimate(o);
        if (*analyze) return cmd_analyze(o);
        if (*plan) return cmd_plan(o);
        if (*thresholds) return cmd_thresholds(o);
    } catch (const ContractViolation &e) {
        std::cerr << "qwe: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimit &e) {
        std::cerr << "qwe: resource limit: " << e.what() << "\n";
        return 3;
    } catch (const IoError &e) {
        std::cerr << "qwe: I/O error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "qwe: internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
