// Copyright 2026 The fdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fdsim/channel.hpp"

namespace fdsim {

/// Linear precoder (M x K, unit-norm columns) and decoder (K x N, unit-norm
/// rows) of a multi-antenna node. Any pair meeting these norms may be
/// supplied; zero forcing is only one construction.
struct BeamformerPair {
  ComplexMatrix precoder;
  ComplexMatrix decoder;

  /// Throws InvalidParameter if shapes disagree or a column/row norm is off
  /// unity by more than `tolerance`.
  void validate(double tolerance = 1e-10) const;
};

/// Moore-Penrose pseudo-inverse via SVD. Throws SingularChannel when the
/// smallest singular value is at or below max(rows, cols) * eps * s_max.
ComplexMatrix pseudo_inverse(const ComplexMatrix& h);

/// Zero-forcing precoder for the K x M downlink channel: columns of the
/// right pseudo-inverse scaled to unit norm by a positive real factor.
ComplexMatrix zf_precoder(const ComplexMatrix& h_down);

/// Zero-forcing decoder for the N x K uplink channel: rows of the left
/// pseudo-inverse scaled to unit norm.
ComplexMatrix zf_decoder(const ComplexMatrix& h_up);

BeamformerPair zf_beamformers(const ComplexMatrix& h_down,
                              const ComplexMatrix& h_up);

/// Squared norm of the 1 x K vector w_row * h_si * precoder.
double residual_si_gain(const ComplexMatrix& w_row, const ComplexMatrix& h_si,
                        const ComplexMatrix& precoder);

}  // namespace fdsim
