#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "halfline/factorization.hpp"
#include "halfline/fluctuation.hpp"
#include "halfline/measure.hpp"
#include "halfline/reconstruct.hpp"
#include "halfline/trace.hpp"
#include "json.hpp"

namespace halfline {

using Json = nlohmann::json;

/// {"step": h, "min_index": k, "coeffs": ["p/q", ...]}. Parsing accepts
/// "p/q" strings, integers, and floats whose value is exactly representable.
Json to_json(const LatticeMeasure& m);
LatticeMeasure measure_from_json(const Json& j);

/// {"step": h, "entries": [measure, ...]} with entry n at position n - 1.
Json to_json(const TraceSet& t);
TraceSet trace_set_from_json(const Json& j);

Json to_json(const Pmf& p);
Json to_json(const LadderTable& t);
Json to_json(const FactorizationResult& f);
Json to_json(const ReconstructionReport& r);
Json to_json(const LemmaReport& r);

/// site,probability
void write_csv(std::ostream& os, const Pmf& p);
/// epoch,height,probability
void write_csv(std::ostream& os, const LadderTable& t);
/// q,re_w,im_w,re_val,im_val,tail_bound
void write_wh_csv(std::ostream& os, std::span<const WHPoint> points);
/// x,log_modulus,modulus sampled on the real line.
void write_boundary_csv(std::ostream& os, const FactorizationResult& f, double x_min, double x_max, int samples);

/// Reads and parses a JSON file; InvalidInput on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace halfline
