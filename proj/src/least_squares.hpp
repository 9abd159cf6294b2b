// Copyright 2026 The sawbath Authors
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

// Thin adapter over Eigen's unsupported Levenberg-Marquardt so the fitters
// can hand over a residual lambda instead of a functor class.

#include <functional>

#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace sawbath::detail {

using ResidualFn = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& r)>;

struct LsqResult {
    Eigen::VectorXd x;
    double residual_norm = 0.0;
    bool converged = false;
    int evaluations = 0;
};

struct LsqOptions {
    int max_evaluations = 4000;
    double xtol = 1e-14;
    double ftol = 1e-14;
};

inline LsqResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0, int n_values,
                                     const LsqOptions& options = {}) {
    struct Functor {
        using Scalar = double;
        enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
        using InputType = Eigen::VectorXd;
        using ValueType = Eigen::VectorXd;
        using JacobianType = Eigen::MatrixXd;

        const ResidualFn* fn;
        int n_in;
        int n_out;
        int inputs() const { return n_in; }
        int values() const { return n_out; }
        int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& r) const {
            (*fn)(x, r);
            return 0;
        }
    };

    Functor functor{&residual, static_cast<int>(x0.size()), n_values};
    Eigen::NumericalDiff<Functor, Eigen::Central> numeric(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor, Eigen::Central>, double> lm(numeric);
    lm.parameters.maxfev = options.max_evaluations;
    lm.parameters.xtol = options.xtol;
    lm.parameters.ftol = options.ftol;

    const auto status = lm.minimize(x0);

    LsqResult out;
    out.x = x0;
    Eigen::VectorXd r(n_values);
    residual(x0, r);
    out.residual_norm = r.norm();
    out.evaluations = static_cast<int>(lm.nfev);
    using namespace Eigen::LevenbergMarquardtSpace;
    out.converged = status != ImproperInputParameters && status != TooManyFunctionEvaluation &&
                    std::isfinite(out.residual_norm);
    return out;
}

}  // namespace sawbath::detail
