// Copyright 2026 The Hoverride Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOVERRIDE_COMMON_INTEGRATORS_H_
#define HOVERRIDE_COMMON_INTEGRATORS_H_

#include <Eigen/Core>

namespace hoverride {

// Classic fixed-step fourth-order Runge-Kutta for an autonomous
// x' = f(x) with inputs held over the step.
template <typename Derived, typename Derivative>
typename Derived::PlainObject Rk4Step(const Eigen::MatrixBase<Derived>& x,
                                      typename Derived::Scalar dt,
                                      Derivative&& f) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  const Scalar half = dt / Scalar(2);
  const Plain k1 = f(x.eval());
  const Plain k2 = f((x + half * k1).eval());
  const Plain k3 = f((x + half * k2).eval());
  const Plain k4 = f((x + dt * k3).eval());
  return x + (dt / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

}  // namespace hoverride

#endif  // HOVERRIDE_COMMON_INTEGRATORS_H_
