// Copyright 2026 The cgt Authors
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

#ifndef CGT_INTERVENTION_HPP_
#define CGT_INTERVENTION_HPP_

#include "cgt/factor.hpp"

namespace cgt {

// do(X_K = x_K): the listed nodes are forced to the listed states.
struct Intervention {
  Assignment assignments;
};

// Interventional distribution P(targets | do(itv)) computed literally from
// the truncated factorization: the intervened nodes' factors are dropped,
// their values clamped everywhere else, and all remaining non-target nodes
// summed out. Not renormalized; a valid model yields a proper distribution.
Factor truncated_query(const BayesNet& bn, const std::vector<NodeId>& targets,
                       const Intervention& itv);

// The same distribution via graph surgery: cut the edges into each intervened
// node, replace its CPD by a point mass, and run ordinary inference on the
// mutilated network. This is the default route for the CLI.
Factor surgery_query(const BayesNet& bn, const std::vector<NodeId>& targets,
                     const Intervention& itv);

// Surgery combined with conditioning: P(targets | do(itv), evidence). The
// truncated factorization has no conditioning; this is an extension.
Factor surgery_query(const BayesNet& bn, const std::vector<NodeId>& targets,
                     const Intervention& itv, const Assignment& evidence);

// The mutilated network itself (shared with post-policy MAID interventions).
BayesNet apply_surgery(const BayesNet& bn, const Intervention& itv);

}  // namespace cgt

#endif  // CGT_INTERVENTION_HPP_
