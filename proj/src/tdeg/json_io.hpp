#pragma once

#include "tdeg/complex.hpp"
#include "tdeg/fibration.hpp"
#include "tdeg/gluing.hpp"
#include "tdeg/monoid.hpp"
#include "tdeg/variety.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace tdeg {

using Json = nlohmann::json;

// Thrown on malformed or schema-violating input; `where` is the field path
// (e.g. "complex.cells[3].vertices") and is embedded in what().
struct InputError : std::runtime_error {
    InputError(const std::string& where, const std::string& what_happened)
        : std::runtime_error(where + ": " + what_happened) {}
};

// ---- serialization (deterministic: objects are key-sorted, numbers exact) --------

Json json_of_int(const Int& v);
Json json_of_rat(const Rat& v);
Json json_of_int_vec(const IntVec& v);
Json json_of_rat_vec(const RatVec& v);
Json json_of_mat(const IntMat& m);
Json json_of_affine(const AffineMapZ& m);
Json json_of_cone(const Cone& c);
Json json_of_polytope(const Polytope& p);
Json json_of_fan(const Fan& f);
Json json_of_complex(const PolyCellComplex& c);
Json json_of_presented_monoid(const PresentedMonoid& m);
Json json_of_cstar(const CStarValue& v);
Json json_of_torus(const TorusElement& t);
Json json_of_open_gluing(const OpenGluingData& g);
Json json_of_lifted_gluing(const LiftedGluingData& l);

// ---- parsing (path-tracked errors) ------------------------------------------------

Int int_of_json(const Json& j, const std::string& where);
Rat rat_of_json(const Json& j, const std::string& where);
IntVec int_vec_of_json(const Json& j, const std::string& where);
RatVec rat_vec_of_json(const Json& j, const std::string& where);
IntMat mat_of_json(const Json& j, const std::string& where);
AffineMapZ affine_of_json(const Json& j, const std::string& where);
Cone cone_of_json(const Json& j, const std::string& where);
Polytope polytope_of_json(const Json& j, const std::string& where);
Fan fan_of_json(const Json& j, const std::string& where);
PolyCellComplex complex_of_json(const Json& j, const std::string& where);
PresentedMonoid presented_monoid_of_json(const Json& j, const std::string& where);
CStarValue cstar_of_json(const Json& j, const std::string& where);
TorusElement torus_of_json(const Json& j, const std::string& where);
OpenGluingData open_gluing_of_json(const Json& j, const std::string& where);
LiftedGluingData lifted_gluing_of_json(const Json& j, const std::string& where);

// ---- command dispatch --------------------------------------------------------------
//
// Commands: monoid.classify, monoid.hilbert, cone.dual, kn.describe,
// complex.validate, complex.monodromy, complex.positive, complex.simple-check,
// complex.mpl-check, gluing.check, gluing.trivialize, k3.run.
//
// The returned report is a complete envelope: tool name, version, command,
// digest of the exact input bytes, verdict, the command report, and (unless
// canonical is set) a timing field.  Serialization is deterministic, so with
// `canonical` the same input and version give byte-identical output.
//
// Throws InputError on malformed input (unknown command, bad JSON, schema
// violation); any other exception indicates an internal failure.

struct CommandResult {
    bool verdict_ok = true;    // false = violations found (exit code 1)
    std::string report_json;   // serialized envelope, trailing newline
};

CommandResult run_command_json(const std::string& command, const std::string& input_bytes,
                               bool canonical);

// CSV table of the quartic discriminant points (RFC 4180): one row per point,
// columns edge, root, momentum, charge, fiber_class.
std::string run_k3_csv();

const char* tool_version();

} // namespace tdeg
