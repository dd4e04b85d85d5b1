#pragma once

// Serialisation of spectra, oracle reports, validation results and sampled
// wavefunctions. Numbers carry 12 significant digits and never depend on
// the locale; only the validation envelope carries a timestamp.

#include <string>
#include <vector>

#include "monopole/oracle.hpp"
#include "monopole/radial.hpp"
#include "monopole/spectra.hpp"
#include "monopole/validation.hpp"

namespace monopole {

enum class Format { Json, Csv, Table };
Format parse_format(const std::string& s);
std::string to_string(Format f);

/// %.12g in the C locale; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

/// Level records; CSV has a header row, JSON is an array of objects with
/// fields scenario, channel, j2 (twice j), n, E, derivation, admissible,
/// reason and formula, plus channel metadata.
std::string levels_to_string(const std::vector<EnergyLevel>& levels, Format f);

std::string oracle_report_json(const OracleReport& r);

/// JSON report of a validation run: envelope (suite, timestamp, pass) plus
/// one record per criterion and the oracle report.
std::string validation_report_json(const SuiteResult& s, const std::string& timestamp);
/// One PASS/FAIL line per criterion.
std::string validation_table(const SuiteResult& s);

/// Wavefunction export: a JSON header line describing the closed form,
/// then a "r,u" header row and one row per sample.
std::string wavefunction_csv(const RadialSolution& sol, const EnergyLevel& level, double residual);

}  // namespace monopole
