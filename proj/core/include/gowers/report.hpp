#pragma once

#include <string>
#include <vector>

#include "gowers/apps.hpp"
#include "gowers/norms.hpp"
#include "gowers/spectral.hpp"
#include "gowers/walk.hpp"

namespace gowers {

// JSON serializers.  Every object carries {tool_version, seq, s}; keys are
// emitted in insertion order so identical inputs give identical bytes.
std::string to_json(const NormReport& rep);
std::string to_json(const AutomaticSequence& seq, const CubeSpec& spec,
                    const ExactAverage& avg);
std::string to_json(const APCountReport& rep);
std::string to_json(const ExpSumReport& rep);
std::string progression_json(const std::string& seq_id, std::uint64_t step,
                             std::uint64_t offset, std::uint64_t count,
                             long long value);
std::string poly_phase_json(const std::string& seq_id, std::uint64_t n,
                            const std::vector<double>& coeffs, double value);
std::string to_json(const std::string& seq_id, std::uint64_t n,
                    std::uint64_t h_max, const SelfCorrelation& best);
std::string spectrum_json(const std::string& seq_id, int s,
                          const DecayEstimate& est);
std::string graph_json(const WalkGraph& g, const GraphProperties& props);
std::string conjecture_json(const std::vector<ConjectureRow>& rows, int s,
                            std::uint64_t n, std::uint64_t q_max);

// CSV serializers (header + rows).
std::string to_csv(const NormReport& rep);
std::string to_csv(const std::vector<APCountReport>& reps);
std::string to_csv(const std::vector<ExpSumReport>& reps);
std::string conjecture_csv(const std::vector<ConjectureRow>& rows);

}  // namespace gowers
