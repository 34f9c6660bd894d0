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

#include "qwe/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwe/errors.hpp"

#ifndef QWE_VERSION
#define QWE_VERSION "0.0.0"
#endif

namespace qwe::io {

namespace {

constexpr char kMagic[4] = {'Q', 'W', 'E', 'B'};
constexpr uint32_t kBinaryVersion = 1;

const Json &field(const Json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        fail_contract(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

template <typename T>
T get_as(const Json &j, const char *name) {
    const Json &f = field(j, name);
    try {
        return f.get<T>();
    } catch (const nlohmann::json::exception &e) {
        fail_contract(std::string("field '") + name + "': " + e.what());
    }
}

mpq_class parse_rational(const Json &v, const std::string &where) {
    try {
        if (v.is_string()) {
            mpq_class q(v.get<std::string>());
            q.canonicalize();
            return q;
        }
        if (v.is_number_integer()) return mpq_class(v.get<long>());
    } catch (const std::invalid_argument &) {
    }
    fail_contract(where + ": expected an integer or a \"p/q\" string");
}

std::vector<double> doubles(const Json &j, const char *name) {
    return get_as<std::vector<double>>(j, name);
}

template <typename T>
void put(std::ostream &out, T v) {
    unsigned char buf[sizeof(T)];
    for (size_t b = 0; b < sizeof(T); b++) buf[b] = static_cast<unsigned char>((static_cast<uint64_t>(v) >> (8 * b)) & 0xFF);
    out.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T>
T take(std::istream &in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char *>(buf), sizeof(T))) {
        fail_contract("binary sample file is truncated");
    }
    uint64_t v = 0;
    for (size_t b = 0; b < sizeof(T); b++) v |= static_cast<uint64_t>(buf[b]) << (8 * b);
    return static_cast<T>(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json envelope(std::string_view artifact, const Json &config, std::optional<uint64_t> seed, std::string_view precision,
              Json data) {
    Json j;
    j["tool"] = "qwe";
    j["version"] = QWE_VERSION;
    j["artifact"] = std::string(artifact);
    j["config"] = config;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["precision"] = std::string(precision);
    j["data"] = std::move(data);
    return j;
}

const Json &payload(const Json &doc) {
    if (doc.is_object() && doc.contains("tool") && doc.contains("data")) {
        return doc.at("data");
    }
    return doc;
}

Json to_json(const EnumeratorVector &v) {
    Json j;
    j["n"] = v.n();
    j["kind"] = std::string(to_string(v.kind()));
    j["precision"] = std::string(to_string(v.precision()));
    Json vals = Json::array();
    if (v.is_exact()) {
        for (const auto &q : v.exact_values()) vals.push_back(q.get_str());
    } else {
        for (double d : v.values()) vals.push_back(d);
    }
    j["values"] = std::move(vals);
    return j;
}

EnumeratorVector enumerator_from_json(const Json &doc) {
    const Json &j = payload(doc);
    const auto kind = parse_vector_kind(get_as<std::string>(j, "kind"));
    const Json &vals = field(j, "values");
    if (!vals.is_array() || vals.empty()) {
        fail_contract("field 'values': expected a non-empty array");
    }
    if (j.contains("n") && get_as<int>(j, "n") + 1 != static_cast<int>(vals.size())) {
        fail_contract("field 'values': " + std::to_string(vals.size()) + " entries do not match n = " +
                      std::to_string(get_as<int>(j, "n")));
    }
    bool exact = true;
    for (const auto &v : vals) exact = exact && (v.is_string() || v.is_number_integer());
    if (exact) {
        std::vector<mpq_class> q;
        for (size_t i = 0; i < vals.size(); i++) q.push_back(parse_rational(vals[i], "values[" + std::to_string(i) + "]"));
        return EnumeratorVector(kind, std::move(q));
    }
    std::vector<double> d;
    for (size_t i = 0; i < vals.size(); i++) {
        if (!vals[i].is_number()) fail_contract("values[" + std::to_string(i) + "]: expected a number");
        d.push_back(vals[i].get<double>());
    }
    return EnumeratorVector(kind, std::move(d));
}

std::string to_csv(const EnumeratorVector &v) {
    std::string out = "index,value\n";
    for (size_t i = 0; i < v.size(); i++) out += std::to_string(i) + "," + format_double(v[i]) + "\n";
    return out;
}

Json to_json(const TransformMatrix &m) {
    Json j;
    j["kind"] = std::string(to_string(m.kind()));
    j["n"] = m.n();
    j["precision"] = std::string(to_string(m.precision()));
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); i++) {
        Json row = Json::array();
        for (int c = 0; c < m.dim(); c++) {
            if (m.precision() == Precision::exact) {
                row.push_back(m.exact().at(i, c).get_str());
            } else {
                row.push_back(m(i, c));
            }
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string to_csv(const TransformMatrix &m) {
    std::string out;
    for (int i = 0; i < m.dim(); i++) {
        for (int c = 0; c < m.dim(); c++) {
            if (c) out += ",";
            out += format_double(m(i, c));
        }
        out += "\n";
    }
    return out;
}

Json to_json(const StabilizerGroup &g) {
    Json j;
    j["n"] = g.n();
    j["k"] = g.k();
    Json gens = Json::array();
    for (const auto &p : g.generators()) {
        Json x = Json::array(), z = Json::array();
        for (int q = 0; q < g.n(); q++) {
            x.push_back(p.x(q) ? 1 : 0);
            z.push_back(p.z(q) ? 1 : 0);
        }
        gens.push_back({{"pauli", p.str(true)}, {"x", x}, {"z", z}});
    }
    j["generators"] = std::move(gens);
    return j;
}

StabilizerGroup group_from_json(const Json &doc) {
    const Json &j = payload(doc);
    const int n = get_as<int>(j, "n");
    const Json &gens = field(j, "generators");
    if (!gens.is_array()) fail_contract("field 'generators': expected an array");
    std::vector<PauliString> out;
    for (size_t g = 0; g < gens.size(); g++) {
        const Json &e = gens[g];
        const std::string where = "generators[" + std::to_string(g) + "]";
        if (e.is_string()) {
            out.push_back(PauliString::parse(e.get<std::string>()));
            continue;
        }
        if (e.is_object() && e.contains("x") && e.contains("z")) {
            auto x = get_as<std::vector<int>>(e, "x");
            auto z = get_as<std::vector<int>>(e, "z");
            if (static_cast<int>(x.size()) != n || static_cast<int>(z.size()) != n) {
                fail_contract(where + ": x and z need n entries");
            }
            std::vector<uint8_t> bits(2 * n);
            for (int q = 0; q < n; q++) {
                bits[q] = x[q] != 0;
                bits[n + q] = z[q] != 0;
            }
            auto p = PauliString::from_bits(n, bits);
            if (e.contains("sign")) p.set_negative(get_as<std::string>(e, "sign") == "-");
            out.push_back(std::move(p));
            continue;
        }
        if (e.is_object() && e.contains("pauli")) {
            out.push_back(PauliString::parse(get_as<std::string>(e, "pauli")));
            continue;
        }
        fail_contract(where + ": expected a Pauli string or {x, z} bit arrays");
    }
    return StabilizerGroup(n, std::move(out));
}

DenseState dense_from_json(const Json &doc) {
    const Json &j = payload(doc);
    const int n = get_as<int>(j, "n");
    if (n < 1 || n > kDenseQubitLimit) fail_resource("dense import: n outside [1, " + std::to_string(kDenseQubitLimit) + "]");
    const Json &entries = field(j, "entries");
    const size_t dim = size_t{1} << n;
    if (!entries.is_array() || entries.size() != dim * dim) {
        fail_contract("field 'entries': expected " + std::to_string(dim * dim) + " [re, im] pairs");
    }
    Eigen::MatrixXcd rho(dim, dim);
    for (size_t k = 0; k < dim * dim; k++) {
        const Json &e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            fail_contract("entries[" + std::to_string(k) + "]: expected [re, im]");
        }
        rho(k / dim, k % dim) = {e[0].get<double>(), e[1].get<double>()};
    }
    return DenseState(n, std::move(rho));
}

DenseState dense_from_binary(int n, std::istream &in) {
    if (n < 1 || n > kDenseQubitLimit) fail_resource("dense import: n outside [1, " + std::to_string(kDenseQubitLimit) + "]");
    const size_t dim = size_t{1} << n;
    Eigen::MatrixXcd rho(dim, dim);
    for (size_t k = 0; k < dim * dim; k++) {
        double re, im;
        uint64_t a = take<uint64_t>(in), b = take<uint64_t>(in);
        std::memcpy(&re, &a, 8);
        std::memcpy(&im, &b, 8);
        rho(k / dim, k % dim) = {re, im};
    }
    return DenseState(n, std::move(rho));
}

Json to_json(const CodeEnumerators &c) {
    Json j;
    j["n"] = c.n;
    j["k"] = c.k;
    j["A"] = c.A;
    j["B"] = c.B;
    j["A_shadow"] = c.A_shadow;
    j["sld"] = to_json(c.sld());
    j["dual_sld"] = to_json(c.dual_sld());
    j["tpd"] = to_json(c.tpd());
    return j;
}

Json to_json(const BellSampleSet &s) {
    Json j;
    j["n"] = s.n;
    j["shots"] = s.shots;
    j["encoding"] = s.per_shot() ? "per_shot" : "histogram";
    j["seed"] = s.seed;
    j["provenance"] = s.provenance;
    if (!s.metadata.empty()) j["metadata"] = Json::parse(s.metadata, nullptr, false);
    if (s.per_shot()) {
        static const char kLetters[] = {'+', 'p', '-', 'm'};
        Json shots = Json::array();
        for (uint64_t k = 0; k < s.shots; k++) {
            std::string row(s.n, ' ');
            for (int q = 0; q < s.n; q++) row[q] = kLetters[s.shot(k)[q]];
            shots.push_back(std::move(row));
        }
        j["symbol_legend"] = {{"+", "phi+"}, {"p", "psi+"}, {"-", "phi-"}, {"m", "psi-"}};
        j["symbols"] = std::move(shots);
    } else {
        j["histogram"] = s.histogram;
    }
    return j;
}

BellSampleSet samples_from_json(const Json &doc) {
    const Json &j = payload(doc);
    BellSampleSet s;
    s.n = get_as<int>(j, "n");
    s.shots = get_as<uint64_t>(j, "shots");
    const auto enc = get_as<std::string>(j, "encoding");
    if (enc != "per_shot" && enc != "histogram") fail_contract("field 'encoding': unknown value '" + enc + "'");
    s.encoding = enc == "per_shot" ? BellSampleSet::Encoding::per_shot : BellSampleSet::Encoding::histogram;
    s.seed = j.contains("seed") ? get_as<uint64_t>(j, "seed") : 0;
    s.provenance = j.contains("provenance") ? get_as<std::string>(j, "provenance") : "";
    if (j.contains("metadata")) s.metadata = j.at("metadata").dump();
    if (s.per_shot()) {
        const Json &rows = field(j, "symbols");
        if (!rows.is_array() || rows.size() != s.shots) fail_contract("field 'symbols': expected one string per shot");
        s.symbols.resize(s.shots * static_cast<size_t>(s.n));
        for (uint64_t k = 0; k < s.shots; k++) {
            if (!rows[k].is_string()) fail_contract("symbols[" + std::to_string(k) + "]: expected a string");
            const auto &row = rows[k].get_ref<const std::string &>();
            if (static_cast<int>(row.size()) != s.n) fail_contract("symbols[" + std::to_string(k) + "]: wrong length");
            for (int q = 0; q < s.n; q++) {
                const char *pos = std::strchr("+p-m", row[q]);
                if (!pos || !row[q]) fail_contract("symbols[" + std::to_string(k) + "]: unknown symbol");
                s.shot(k)[q] = static_cast<uint8_t>(pos - "+p-m");
            }
        }
    } else {
        s.histogram = get_as<std::vector<uint64_t>>(j, "histogram");
    }
    s.validate();
    return s;
}

std::string histogram_csv(const BellSampleSet &s) {
    std::string out = "triplets,count\n";
    auto h = s.triplet_histogram();
    for (size_t i = 0; i < h.size(); i++) out += std::to_string(i) + "," + std::to_string(h[i]) + "\n";
    return out;
}

void write_samples_binary(const BellSampleSet &s, std::ostream &out) {
    s.validate();
    out.write(kMagic, 4);
    put<uint32_t>(out, kBinaryVersion);
    put<uint32_t>(out, static_cast<uint32_t>(s.n));
    put<uint64_t>(out, s.shots);
    put<uint8_t>(out, s.per_shot() ? 0 : 1);
    put<uint64_t>(out, s.seed);
    put<uint32_t>(out, static_cast<uint32_t>(s.provenance.size()));
    out.write(s.provenance.data(), static_cast<std::streamsize>(s.provenance.size()));
    put<uint32_t>(out, static_cast<uint32_t>(s.metadata.size()));
    out.write(s.metadata.data(), static_cast<std::streamsize>(s.metadata.size()));
    if (s.per_shot()) {
        // Four 2-bit symbols per byte, first symbol in the low bits.
        std::vector<uint8_t> packed((s.symbols.size() + 3) / 4, 0);
        for (size_t k = 0; k < s.symbols.size(); k++) packed[k / 4] |= static_cast<uint8_t>(s.symbols[k] << (2 * (k % 4)));
        out.write(reinterpret_cast<const char *>(packed.data()), static_cast<std::streamsize>(packed.size()));
    } else {
        for (uint64_t c : s.histogram) put<uint64_t>(out, c);
    }
}

BellSampleSet read_samples_binary(std::istream &in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
        fail_contract("not a binary sample file (bad magic)");
    }
    const uint32_t version = take<uint32_t>(in);
    if (version != kBinaryVersion) {
        fail_contract("binary sample file version " + std::to_string(version) + " is not supported");
    }
    BellSampleSet s;
    s.n = static_cast<int>(take<uint32_t>(in));
    s.shots = take<uint64_t>(in);
    s.encoding = take<uint8_t>(in) == 0 ? BellSampleSet::Encoding::per_shot : BellSampleSet::Encoding::histogram;
    s.seed = take<uint64_t>(in);
    auto read_string = [&]() {
        std::string str(take<uint32_t>(in), '\0');
        if (!in.read(str.data(), static_cast<std::streamsize>(str.size()))) fail_contract("binary sample file is truncated");
        return str;
    };
    s.provenance = read_string();
    s.metadata = read_string();
    if (s.per_shot()) {
        s.symbols.resize(s.shots * static_cast<size_t>(s.n));
        std::vector<uint8_t> packed((s.symbols.size() + 3) / 4);
        if (!in.read(reinterpret_cast<char *>(packed.data()), static_cast<std::streamsize>(packed.size()))) {
            fail_contract("binary sample file is truncated");
        }
        for (size_t k = 0; k < s.symbols.size(); k++) s.symbols[k] = (packed[k / 4] >> (2 * (k % 4))) & 3;
    } else {
        s.histogram.resize(s.n + 1);
        for (auto &c : s.histogram) c = take<uint64_t>(in);
    }
    s.validate();
    return s;
}

Json to_json(const EstimationReport &r) {
    Json j;
    j["n"] = r.n;
    j["shots"] = r.shots;
    j["resamples"] = r.resamples;
    j["ci_level"] = r.ci_level;
    j["triplet_histogram"] = r.triplet_histogram;
    j["purity"] = {{"value", r.purity}, {"lower", r.purity_lower}, {"upper", r.purity_upper}};
    j["mean_triplets"] = r.mean_triplets;
    j["precision_warning"] = r.precision_warning;
    Json vecs;
    for (const auto &v : r.vectors) {
        vecs[std::string(to_string(v.kind))] = {
            {"value", v.value}, {"lower", v.lower}, {"upper", v.upper}, {"std_error", v.std_error}};
    }
    j["vectors"] = std::move(vecs);
    return j;
}

EstimationReport estimation_from_json(const Json &doc) {
    const Json &j = payload(doc);
    EstimationReport r;
    r.n = get_as<int>(j, "n");
    r.shots = get_as<uint64_t>(j, "shots");
    r.resamples = get_as<int>(j, "resamples");
    r.ci_level = get_as<double>(j, "ci_level");
    r.triplet_histogram = get_as<std::vector<uint64_t>>(j, "triplet_histogram");
    const Json &p = field(j, "purity");
    r.purity = get_as<double>(p, "value");
    r.purity_lower = get_as<double>(p, "lower");
    r.purity_upper = get_as<double>(p, "upper");
    r.mean_triplets = get_as<double>(j, "mean_triplets");
    r.precision_warning = j.value("precision_warning", false);
    const Json &vecs = field(j, "vectors");
    for (int k = 0; k < 6; k++) {
        const auto kind = static_cast<VectorKind>(k);
        const Json &v = field(vecs, std::string(to_string(kind)).c_str());
        auto &e = r.vectors[k];
        e.kind = kind;
        e.value = doubles(v, "value");
        e.lower = doubles(v, "lower");
        e.upper = doubles(v, "upper");
        e.std_error = doubles(v, "std_error");
        for (auto *vec : {&e.value, &e.lower, &e.upper, &e.std_error}) {
            if (static_cast<int>(vec->size()) != r.n + 1) {
                fail_contract("vectors." + std::string(to_string(kind)) + ": expected n + 1 entries");
            }
        }
    }
    return r;
}

Json to_json(const MitigationModel &m) {
    return Json{{"lambdas", m.lambdas}, {"reference", m.reference}, {"flagged", m.flagged}};
}

MitigationModel mitigation_from_json(const Json &doc) {
    const Json &j = payload(doc);
    const Json &src = j.contains("mitigation") ? j.at("mitigation") : j;
    MitigationModel m;
    m.lambdas = doubles(src, "lambdas");
    m.reference = src.value("reference", "");
    if (src.contains("flagged")) m.flagged = get_as<std::vector<int>>(src, "flagged");
    return m;
}

Json to_json(const CriteriaReport &r) {
    Json j;
    j["n"] = r.n;
    j["input"] = r.estimated ? "estimated" : "exact";
    j["purity"] = r.purity;
    j["n_body_margin"] = r.n_body_margin;
    j["purity_margin"] = r.purity_margin;
    j["concurrence_lower_bound"] = r.concurrence_lower_bound;
    j["n_tangle"] = r.n_tangle;
    j["n_tangle_valid"] = r.n_tangle_valid;
    j["uniformity"] = r.uniformity;
    j["zero_tolerance"] = r.zero_tolerance;
    Json v = Json::array();
    for (const auto &x : r.verdicts) {
        v.push_back({{"criterion", x.criterion}, {"margin", x.margin}, {"tolerance", x.tolerance}, {"entangled", x.entangled}});
    }
    j["verdicts"] = std::move(v);
    return j;
}

Json to_json(const TpdMoments &m) {
    return Json{{"mean", m.mean},         {"variance", m.variance}, {"variance_via_sld", m.variance_via_sld},
                {"A1", m.A1},             {"A2", m.A2},             {"consistent", m.consistent}};
}

Json to_json(const std::vector<Violation> &v) {
    Json j = Json::array();
    for (const auto &x : v) j.push_back({{"constraint", x.constraint}, {"amount", x.amount}});
    return j;
}

void write_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json(const std::string &path) {
    const std::string text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        // Translate the byte offset into a line number.
        size_t line = 1 + std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n');
        fail_contract(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

BellSampleSet read_samples(const std::string &path) {
    const std::string text = read_file(path);
    if (text.size() >= 4 && std::memcmp(text.data(), kMagic, 4) == 0) {
        std::istringstream in(text);
        return read_samples_binary(in);
    }
    return samples_from_json(read_json(path));
}

}  // namespace qwe::io
