// Copyright 2026 The LegalSeq Authors.
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

#ifndef LEGALSEQ_NN_OPS_H_
#define LEGALSEQ_NN_OPS_H_

#include <vector>

#include "legalseq/nn/graph.h"

// Differentiable operations. All operands of one call must belong to the
// same Graph. Shapes are (rows, cols) with rows indexing sequence positions.
namespace legalseq::nn {

Var MatMul(Var a, Var b);          // a * b
Var MatMulNT(Var a, Var b);        // a * b^T
// a * b one row at a time; each output row depends only on its input row.
Var RowMatMul(Var a, Var b);
Var Transpose(Var a);
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);             // elementwise
Var Scale(Var a, double factor);
Var AddRow(Var a, Var row);        // adds a 1 x C row to every row of a

Var Tanh(Var a);
Var Sigmoid(Var a);
Var Relu(Var a);
Var Gelu(Var a);                   // erf form

Var SliceRows(Var a, Eigen::Index start, Eigen::Index count);
Var SliceCols(Var a, Eigen::Index start, Eigen::Index count);
Var ConcatRows(const std::vector<Var> &parts);
Var ConcatCols(const std::vector<Var> &parts);

Var SoftmaxRows(Var a);
Var MeanRows(Var a);               // 1 x C
Var SumRows(Var a);                // 1 x C
Var Sum(Var a);                    // 1 x 1

Var LayerNormRows(Var a, Var gain, Var bias, double eps);

// Inverted dropout; identity unless the graph is in training mode.
Var Dropout(Var a, double rate);

// Row lookup: out[i] = table[indices[i]].
Var Gather(Var table, const std::vector<int> &indices);
// out[i] = sum over p in index_lists[i] of table[p], summed in list order.
Var GatherSum(Var table, const std::vector<std::vector<int>> &index_lists);

// Sum over rows of -log softmax(logits[i])[targets[i]]; 1 x 1.
Var SoftmaxCrossEntropy(Var logits, const std::vector<int> &targets);

}  // namespace legalseq::nn

#endif  // LEGALSEQ_NN_OPS_H_
