// Copyright 2026 The twag Authors.
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


#ifndef TWAG_GENERATOR_MODEL_HPP
#define TWAG_GENERATOR_MODEL_HPP

#include <cstddef>
#include <string>

#include "twag/autodiff/layers.hpp"
#include "twag/autodiff/optimizer.hpp"
#include "twag/autodiff/tensor.hpp"
#include "twag/util/random.hpp"

namespace twag::generator {

using ad::Tensor;

struct GeneratorShape {
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 300;
  std::size_t hidden = 512;
  std::size_t topic_count = 0;  // real topics, NOISE excluded
};

template <typename T>
struct GeneratorModel {
  Tensor<T> embedding;  // V x E

  // Topic encoder: BiGRU over each group, then projections to width H.
  ad::GruCell<T> encoder_forward;
  ad::GruCell<T> encoder_backward;
  ad::Linear<T> token_projection;  // 2H -> H, gives u_i
  ad::Linear<T> topic_projection;  // 2H -> H, gives g_k

  // Topic predictor.
  ad::GruCell<T> predictor;  // input e (H), state h (H)
  ad::Linear<T> topic_logits;  // H -> topics
  ad::Linear<T> stop;          // H -> 1

  // Attention: score_i = v . tanh(u_i W_u + s W_s + b_a).
  Tensor<T> attention_token;  // H x H
  Tensor<T> attention_state;  // H x H
  Tensor<T> attention_bias;   // 1 x H
  Tensor<T> attention_score;  // H x 1

  // Sentence decoder and vocabulary head [s; c*] -> H -> V.
  ad::GruCell<T> decoder;  // input x (E), state s (H)
  ad::Linear<T> vocab_hidden;
  ad::Linear<T> vocab_out;

  // Generation gate from context, decoder state and decoder input.
  Tensor<T> gate_context;  // H x 1
  Tensor<T> gate_state;    // H x 1
  Tensor<T> gate_input;    // E x 1
  Tensor<T> gate_bias;     // 1 x 1

  GeneratorModel() = default;
  explicit GeneratorModel(const GeneratorShape& s)
      : embedding(Tensor<T>::zeros({s.vocab_size, s.embed_dim}, true)),
        encoder_forward(s.embed_dim, s.hidden),
        encoder_backward(s.embed_dim, s.hidden),
        token_projection(2 * s.hidden, s.hidden),
        topic_projection(2 * s.hidden, s.hidden),
        predictor(s.hidden, s.hidden),
        topic_logits(s.hidden, s.topic_count),
        stop(s.hidden, 1),
        attention_token(Tensor<T>::zeros({s.hidden, s.hidden}, true)),
        attention_state(Tensor<T>::zeros({s.hidden, s.hidden}, true)),
        attention_bias(Tensor<T>::zeros({1, s.hidden}, true)),
        attention_score(Tensor<T>::zeros({s.hidden, 1}, true)),
        decoder(s.embed_dim, s.hidden),
        vocab_hidden(2 * s.hidden, s.hidden),
        vocab_out(s.hidden, s.vocab_size),
        gate_context(Tensor<T>::zeros({s.hidden, 1}, true)),
        gate_state(Tensor<T>::zeros({s.hidden, 1}, true)),
        gate_input(Tensor<T>::zeros({s.embed_dim, 1}, true)),
        gate_bias(Tensor<T>::zeros({1, 1}, true)) {}

  GeneratorShape shape() const {
    return {embedding.rows(), embedding.cols(), hidden(), topic_count()};
  }
  std::size_t vocab_size() const { return embedding.rows(); }
  std::size_t embed_dim() const { return embedding.cols(); }
  std::size_t hidden() const { return predictor.hidden_size(); }
  std::size_t topic_count() const { return topic_logits.out_features(); }

  /// Uniform(-range, range) weights, zero biases.
  void init(Rng& rng, double range = 0.1) {
    ad::init_uniform(embedding, rng, range);
    encoder_forward.init(rng, range);
    encoder_backward.init(rng, range);
    token_projection.init(rng, range);
    topic_projection.init(rng, range);
    predictor.init(rng, range);
    topic_logits.init(rng, range);
    stop.init(rng, range);
    ad::init_uniform(attention_token, rng, range);
    ad::init_uniform(attention_state, rng, range);
    ad::init_uniform(attention_score, rng, range);
    decoder.init(rng, range);
    vocab_hidden.init(rng, range);
    vocab_out.init(rng, range);
    ad::init_uniform(gate_context, rng, range);
    ad::init_uniform(gate_state, rng, range);
    ad::init_uniform(gate_input, rng, range);
  }

  /// Independent copy of every parameter.
  GeneratorModel clone() const {
    GeneratorModel out(shape());
    auto dst = out.parameters();
    const auto src = parameters();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i].tensor.assign(src[i].tensor.values());
    return out;
  }

  ad::ParameterList<T> parameters() const {
    ad::ParameterList<T> out;
    out.push_back({"generator.embedding", embedding});
    encoder_forward.collect(out, "generator.encoder.forward");
    encoder_backward.collect(out, "generator.encoder.backward");
    token_projection.collect(out, "generator.encoder.token_projection");
    topic_projection.collect(out, "generator.encoder.topic_projection");
    predictor.collect(out, "generator.predictor.gru");
    topic_logits.collect(out, "generator.predictor.topic_logits");
    stop.collect(out, "generator.predictor.stop");
    out.push_back({"generator.attention.token_weight", attention_token});
    out.push_back({"generator.attention.state_weight", attention_state});
    out.push_back({"generator.attention.bias", attention_bias});
    out.push_back({"generator.attention.score", attention_score});
    decoder.collect(out, "generator.decoder.gru");
    vocab_hidden.collect(out, "generator.decoder.vocab_hidden");
    vocab_out.collect(out, "generator.decoder.vocab_out");
    out.push_back({"generator.gate.context", gate_context});
    out.push_back({"generator.gate.state", gate_state});
    out.push_back({"generator.gate.input", gate_input});
    out.push_back({"generator.gate.bias", gate_bias});
    return out;
  }
};

}  // namespace twag::generator

#endif  // TWAG_GENERATOR_MODEL_HPP
