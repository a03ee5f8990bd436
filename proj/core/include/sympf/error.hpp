#pragma once

#include <stdexcept>
#include <string>

namespace sympf {

// Error categories surfaced by the library. The CLI maps these onto its
// documented exit codes; library callers can switch on code().
enum class Errc {
  kParse,                // malformed JSON / form file / expression text
  kDimension,            // odd dimension, size mismatch, n beyond supported limit
  kDegenerateForm,       // Pf(A) = 0 where nondegeneracy is required
  kDifferentOrbit,       // witness requested across distinct orbits
  kScalarMultiple,       // reduction requested for A = +-sqrt(p) J (singleton orbit)
  kVanishingCoefficient, // split-form coefficient hits zero on the sample grid
  kIndexOutOfRange,
  kBasisValuesMismatch,  // equivalence precondition violated
  kSingularBasis,
  kNotSymplectic,
  kDomain,               // input outside an operation's stated domain
  kEval,                 // expression evaluation error (unbound var, div by zero, ...)
  kNeedsFloat,           // exact mode cannot represent a required irrational scalar
  kInternal,             // a verified postcondition failed; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace sympf
