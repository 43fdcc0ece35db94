#pragma once

#include <string>
#include <variant>

#include "qalab/bca.hpp"
#include "qalab/gfa.hpp"
#include "qalab/multihead.hpp"
#include "qalab/qmachine.hpp"

namespace qalab {

// Machine files are JSON with a top-level "kind" of gfa | qfa_oneway |
// qbca_realtime | nbca | dbca | pbca | pkfa. Serialization is canonical:
// serialize(parse(serialize(m))) is byte-identical.
using Machine = std::variant<Gfa, Dbca, Nbca, Pbca, Pkfa, QMachineSpec>;

std::string machine_kind(const Machine& m);
const Alphabet& machine_alphabet(const Machine& m);
std::string machine_name(const Machine& m);

std::string serialize_machine(const Machine& m);
Machine parse_machine(const std::string& text);

Machine load_machine(const std::string& path);
void save_machine(const Machine& m, const std::string& path);

// Human-oriented one-liner: state/transition counts.
std::string machine_summary(const Machine& m);

} // namespace qalab
