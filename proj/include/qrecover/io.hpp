/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_IO_HPP_
#define QRECOVER_IO_HPP_

#include <string>
#include <vector>

#include "qrecover/classical.hpp"
#include "qrecover/conjectures.hpp"
#include "qrecover/extend.hpp"
#include "qrecover/measures.hpp"
#include "qrecover/state.hpp"

// Canonical text documents: fixed field order, one field per line, reals with
// 17 significant digits (so doubles round-trip bitwise), infinities and NaN
// encoded as the strings "inf" / "-inf" / "nan". Every document carries its
// schema version; the timestamp sits on its own line so archived documents
// can be compared modulo that line.

namespace qrecover {

std::string timestamp_utc(); // ISO 8601, seconds resolution

// State files: version, labels, dims, matrix entries as [re, im] pairs in
// row-major order.
std::string serialize(const MultipartiteState &rho,
                      const std::string &timestamp);
MultipartiteState parse_state(const std::string &text);

std::string serialize(const Distribution &p, const std::string &timestamp);
Distribution parse_distribution(const std::string &text);

std::string serialize(const ExtensionReport &report,
                      const std::string &timestamp);
ExtensionReport parse_extension_report(const std::string &text);

std::string serialize(const InequalityReport &report,
                      const std::string &timestamp);
InequalityReport parse_inequality_report(const std::string &text);

// Search summary: best report, the ten worst gaps, violation count, status.
// The witness state travels as a separate state file; parsing leaves it empty.
std::string serialize(const SearchResult &result, const std::string &timestamp);
SearchResult parse_search_summary(const std::string &text);

std::string serialize(const MeasureEstimate &estimate,
                      const std::string &timestamp);
MeasureEstimate parse_measure_estimate(const std::string &text);

std::string serialize(const ClassicalGapReport &report,
                      const std::string &timestamp);
ClassicalGapReport parse_classical_gap_report(const std::string &text);

std::string serialize(const FunctorialityReport &report,
                      const std::string &timestamp);
FunctorialityReport parse_functoriality_report(const std::string &text);

// CSV flattening, one report per row, %.17g reals; list-valued fields are
// joined with ';' inside one cell.
std::string csv_header(const InequalityReport &);
std::string csv_row(const InequalityReport &report);
std::string csv_header(const ExtensionReport &);
std::string csv_row(const ExtensionReport &report);
std::string csv_header(const MeasureEstimate &);
std::string csv_row(const MeasureEstimate &estimate);

std::string format_real(double v); // %.17g with inf/nan spelled out

std::string read_text_file(const std::string &path); // IoError on failure
void write_text_file(const std::string &path, const std::string &text);

std::string to_string(FunctorialityAxiom axiom);
InequalityId inequality_from_string(const std::string &name);
MapVariant map_variant_from_string(const std::string &name);
FunctorialityAxiom axiom_from_string(const std::string &name);

} // namespace qrecover

#endif // QRECOVER_IO_HPP_
