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

#include "fdsim/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fdsim/error.hpp"

namespace fdsim {

void BeamformerPair::validate(double tolerance) const {
  detail::require(precoder.size() > 0 && decoder.size() > 0,
                  "beamformers must be non-empty");
  detail::require(precoder.cols() == decoder.rows(),
                  "precoder columns and decoder rows must both equal K");
  for (Eigen::Index k = 0; k < precoder.cols(); ++k) {
    const double norm = precoder.col(k).norm();
    detail::require(std::abs(norm - 1.0) <= tolerance,
                    "precoder column " + std::to_string(k) +
                        " is not unit norm");
  }
  for (Eigen::Index k = 0; k < decoder.rows(); ++k) {
    const double norm = decoder.row(k).norm();
    detail::require(std::abs(norm - 1.0) <= tolerance,
                    "decoder row " + std::to_string(k) + " is not unit norm");
  }
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& h) {
  detail::require(h.rows() >= 1 && h.cols() >= 1,
                  "cannot pseudo-invert an empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(sv.size() - 1);
  const double tolerance = static_cast<double>(std::max(h.rows(), h.cols())) *
                           std::numeric_limits<double>::epsilon() * largest;
  if (!(smallest > tolerance)) {
    throw SingularChannel("channel is rank deficient (smallest singular value " +
                          std::to_string(smallest) + ")");
  }
  const Eigen::VectorXd inv = sv.cwiseInverse();
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

ComplexMatrix zf_precoder(const ComplexMatrix& h_down) {
  detail::require(h_down.rows() <= h_down.cols(),
                  "zero forcing precoder needs K <= M");
  ComplexMatrix v = pseudo_inverse(h_down);
  for (Eigen::Index k = 0; k < v.cols(); ++k) v.col(k) /= v.col(k).norm();
  return v;
}

ComplexMatrix zf_decoder(const ComplexMatrix& h_up) {
  detail::require(h_up.cols() <= h_up.rows(),
                  "zero forcing decoder needs K <= N");
  ComplexMatrix w = pseudo_inverse(h_up);
  for (Eigen::Index k = 0; k < w.rows(); ++k) w.row(k) /= w.row(k).norm();
  return w;
}

BeamformerPair zf_beamformers(const ComplexMatrix& h_down,
                              const ComplexMatrix& h_up) {
  return {zf_precoder(h_down), zf_decoder(h_up)};
}

double residual_si_gain(const ComplexMatrix& w_row, const ComplexMatrix& h_si,
                        const ComplexMatrix& precoder) {
  detail::require(w_row.rows() == 1, "decoder row must be 1 x N");
  detail::require(w_row.cols() == h_si.rows(),
                  "decoder row length must equal SI channel rows (N)");
  detail::require(h_si.cols() == precoder.rows(),
                  "SI channel columns must equal precoder rows (M)");
  return ((w_row * h_si) * precoder).squaredNorm();
}

}  // namespace fdsim
