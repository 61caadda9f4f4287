#pragma once

#include <string>
#include <vector>

#include "tropkit/maxprinciple.hpp"

#include <json.hpp>

namespace tropkit {

using Json = nlohmann::json;

// A cycle document: format_version "1", ambient_dim, optional
// gamma_generators, and cells given by vertices/rays/lineality with integer
// weights. Rationals are strings ("p" or "p/q") everywhere.
struct LoadedCycle {
    TropicalCycle cycle;
    std::vector<Rational> gamma_generators;
    ComplexBuildReport report;
    std::vector<std::string> warnings;
    // Document cell position -> weighted cell index in the complex (-1 when
    // the cell was pruned for weight 0).
    std::vector<int> doc_cell_index;
};

LoadedCycle load_cycle_document(const std::string& text, const std::string& source);
LoadedCycle load_cycle_file(const std::string& path);

Json cycle_to_json(const TropicalCycle& c);
std::string save_cycle_document(const TropicalCycle& c);

struct LoadedFunction {
    TropicalCycle cycle; // refined cycle for polynomial documents
    PiecewiseFunction func;
    bool was_polynomial = false;
};

LoadedFunction load_function_document(const std::string& text, const std::string& source,
                                      const LoadedCycle& on);
LoadedFunction load_function_file(const std::string& path, const LoadedCycle& on);

// JSON fragments shared by the CLI reports.
Json qvec_to_json(const QVec& v);
Json zvec_to_json(const ZVec& v);
QVec parse_point(const std::string& csv, int expected_dim);
Json balancing_to_json(const BalancingReport& rep);
Json psh_to_json(const PshReport& rep);
Json genericity_to_json(const GenericityCertificate& cert);
Json trace_to_json(const SlicingTrace& trace);
Json verdict_to_json(const MaxPrincipleVerdict& v);

} // namespace tropkit
