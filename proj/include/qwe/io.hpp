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

// File formats: JSON and CSV exports of vectors, matrices and reports, the
// binary sample format, and atomic file writes.

#ifndef QWE_IO_HPP
#define QWE_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "qwe/analysis.hpp"
#include "qwe/enumerator.hpp"
#include "qwe/estimation.hpp"
#include "qwe/sampler.hpp"
#include "qwe/states.hpp"
#include "qwe/transforms.hpp"

namespace qwe::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// Every artifact is wrapped as {"tool", "version", "artifact", "config",
/// "seed", "precision", "data"}; no timestamps, so reruns are byte-identical.
Json envelope(std::string_view artifact, const Json &config, std::optional<uint64_t> seed, std::string_view precision,
              Json data);
/// The "data" member of an envelope, or the document itself when bare.
const Json &payload(const Json &doc);

Json to_json(const EnumeratorVector &v);
EnumeratorVector enumerator_from_json(const Json &j);
std::string to_csv(const EnumeratorVector &v);

/// Rows of "p/q" strings in exact mode, numbers in float mode.
Json to_json(const TransformMatrix &m);
std::string to_csv(const TransformMatrix &m);

Json to_json(const StabilizerGroup &g);
/// Accepts {"n", "generators": [...]} with either Pauli strings or {"x", "z", "sign"} bit arrays.
StabilizerGroup group_from_json(const Json &j);

/// Row-major complex pairs: JSON [[re, im], ...] or raw little-endian float64 pairs.
DenseState dense_from_json(const Json &j);
DenseState dense_from_binary(int n, std::istream &in);

Json to_json(const CodeEnumerators &c);

Json to_json(const BellSampleSet &s);
BellSampleSet samples_from_json(const Json &j);
/// Columns (triplets, count).
std::string histogram_csv(const BellSampleSet &s);
void write_samples_binary(const BellSampleSet &s, std::ostream &out);
BellSampleSet read_samples_binary(std::istream &in);

Json to_json(const EstimationReport &r);
EstimationReport estimation_from_json(const Json &j);

Json to_json(const MitigationModel &m);
MitigationModel mitigation_from_json(const Json &j);

Json to_json(const CriteriaReport &r);
Json to_json(const TpdMoments &m);
Json to_json(const std::vector<Violation> &v);

/// Writes to a temporary sibling and renames it into place. Throws IoError.
void write_atomic(const std::string &path, const std::string &content);
std::string read_file(const std::string &path);
/// Parses a file; binary sample files are recognized by their magic bytes.
Json read_json(const std::string &path);
BellSampleSet read_samples(const std::string &path);

}  // namespace qwe::io

#endif
