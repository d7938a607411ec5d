#pragma once

// Depth marching of the field envelopes in the travelling-window frame
// (τ = t − z/c, ζ = z), where the slowly varying envelope equations reduce to
//
//   ∂g/∂ζ = i ρ13[g, G],   ∂G/∂ζ = i ρ12[g, G]      (η = 1).
//
// Each depth step is a Heun predictor–corrector; every source evaluation is a
// full Bloch integration along τ.

#include <cstddef>
#include <memory>
#include <string>

#include "eitsim/bloch.hpp"
#include "eitsim/core.hpp"
#include "eitsim/pulses.hpp"

namespace eitsim {

struct PropagationOptions {
  BlochParams bloch;
  /// Diagnostic only: keep the control at its boundary profile.
  bool freeze_control = false;
};

/// Any envelope sample above this multiple of the boundary max V aborts.
inline constexpr double kBlowupFactor = 10.0;

class MarchingError : public Error {
 public:
  MarchingError(std::size_t depth_index, const std::string& what)
      : Error(what), depth_index_(depth_index) {}
  std::size_t depth_index() const noexcept { return depth_index_; }
  std::string_view kind() const noexcept override { return "marching-instability"; }

 private:
  std::size_t depth_index_;
};

/// Raised by `propagate`; carries the history recorded before the failure.
class PropagationError : public Error {
 public:
  PropagationError(std::string cause_kind, std::size_t depth_index,
                   std::shared_ptr<const FieldHistory> partial, const std::string& what)
      : Error(what),
        cause_kind_(std::move(cause_kind)),
        depth_index_(depth_index),
        partial_(std::move(partial)) {}
  std::size_t depth_index() const noexcept { return depth_index_; }
  const FieldHistory& partial() const noexcept { return *partial_; }
  std::string_view kind() const noexcept override { return cause_kind_; }

 private:
  std::string cause_kind_;
  std::size_t depth_index_;
  std::shared_ptr<const FieldHistory> partial_;
};

struct DepthStep {
  Envelope probe;
  Envelope control;
  /// Coherences of the corrector stage.
  CoherenceSlice coherence;
};

/// One Heun step of size `dzeta`. The blow-up limit defaults to
/// kBlowupFactor times the max V of the inputs.
DepthStep advance_depth(const Envelope& probe, const Envelope& control, double dzeta,
                        const PropagationOptions& options = {});

struct ScenarioSpec {
  ProbeShape probe;
  ControlShape control;
  Grid grid;
  PropagationOptions options{};
  /// Also evaluate the adiabaton solution on the same grid (used by the CLI).
  bool oracle_compare = false;
};

/// Marches from the ζ = 0 boundary, recording the fields and ρ32 at depth 0
/// and every snapshot depth. Marching stops at the deepest snapshot.
/// Deterministic for a fixed spec. Throws PropagationError.
FieldHistory propagate(const ScenarioSpec& spec);

/// Same as above for arbitrary boundary envelopes.
FieldHistory propagate(const Envelope& probe0, const Envelope& control0, const Grid& grid,
                       const PropagationOptions& options = {});

}  // namespace eitsim
