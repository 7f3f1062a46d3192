#pragma once

#include <stdexcept>
#include <string>

namespace flow {

enum class errc {
  invalid_entry,
  cyclic_reference,
  omega_cap_exceeded,
  bound_too_large,
  infinite_support,
  ambiguous_composition,
  ambiguous_creation,
  not_a_zf_set,
  not_a_pair,
  invalid_component,
  no_connector,
  not_emergent,
  not_a_pair_set,
  not_a_function,
  degree_bound_exceeded,
  rank_bound_exceeded,
  syntax_error,
  unsupported_construct,
  unknown_axiom,
  carrier_incomplete,
  malformed_document,
  version_mismatch,
  elaboration_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_entry: return "InvalidEntry";
    case errc::cyclic_reference: return "CyclicReference";
    case errc::omega_cap_exceeded: return "OmegaCapExceeded";
    case errc::bound_too_large: return "BoundTooLarge";
    case errc::infinite_support: return "InfiniteSupport";
    case errc::ambiguous_composition: return "AmbiguousComposition";
    case errc::ambiguous_creation: return "AmbiguousCreation";
    case errc::not_a_zf_set: return "NotAZfSet";
    case errc::not_a_pair: return "NotAPair";
    case errc::invalid_component: return "InvalidComponent";
    case errc::no_connector: return "NoConnector";
    case errc::not_emergent: return "NotEmergent";
    case errc::not_a_pair_set: return "NotAPairSet";
    case errc::not_a_function: return "NotAFunction";
    case errc::degree_bound_exceeded: return "DegreeBoundExceeded";
    case errc::rank_bound_exceeded: return "RankBoundExceeded";
    case errc::syntax_error: return "SyntaxError";
    case errc::unsupported_construct: return "UnsupportedConstruct";
    case errc::unknown_axiom: return "UnknownAxiom";
    case errc::carrier_incomplete: return "CarrierIncomplete";
    case errc::malformed_document: return "MalformedDocument";
    case errc::version_mismatch: return "VersionMismatch";
    case errc::elaboration_error: return "ElaborationError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  errc code;
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

[[noreturn]] inline void raise(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace flow
