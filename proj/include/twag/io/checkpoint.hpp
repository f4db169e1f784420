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


// Named-tensor archive:
//
//   "TWAGCKPT1"
//   repeated until end of file:
//     u32 name length, name bytes (UTF-8)
//     u32 rank, u32 dims[rank]
//     float32 values, row-major
//
// All integers and floats are little-endian.

#ifndef TWAG_IO_CHECKPOINT_HPP
#define TWAG_IO_CHECKPOINT_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "twag/autodiff/optimizer.hpp"
#include "twag/autodiff/tensor.hpp"
#include "twag/errors.hpp"

namespace twag::io {

inline constexpr std::string_view kCheckpointMagic = "TWAGCKPT1";

struct NamedTensor {
  std::string name;
  ad::Shape shape;
  std::vector<float> values;

  bool operator==(const NamedTensor&) const = default;
};

using TensorArchive = std::vector<NamedTensor>;

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

// Returns false on a clean end of file before any byte.
inline bool get_u32(std::istream& in, std::uint32_t& v, bool eof_ok = false) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (in.gcount() == 0 && eof_ok) return false;
  if (in.gcount() != 4) throw ValidationError("checkpoint truncated");
  v = static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
      static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
  return true;
}

}  // namespace detail

inline void write_archive(std::ostream& out, const TensorArchive& archive) {
  out.write(kCheckpointMagic.data(), static_cast<std::streamsize>(kCheckpointMagic.size()));
  for (const auto& t : archive) {
    detail::put_u32(out, static_cast<std::uint32_t>(t.name.size()));
    out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    detail::put_u32(out, static_cast<std::uint32_t>(t.shape.size()));
    for (std::size_t d : t.shape) detail::put_u32(out, static_cast<std::uint32_t>(d));
    for (float v : t.values) detail::put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
}

inline TensorArchive read_archive(std::istream& in) {
  std::string magic(kCheckpointMagic.size(), '\0');
  in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kCheckpointMagic) {
    throw ValidationError("not a checkpoint (bad magic)");
  }
  TensorArchive out;
  std::uint32_t name_len = 0;
  while (detail::get_u32(in, name_len, true)) {
    NamedTensor t;
    t.name.resize(name_len);
    in.read(t.name.data(), name_len);
    if (in.gcount() != static_cast<std::streamsize>(name_len))
      throw ValidationError("checkpoint truncated in tensor name");
    std::uint32_t rank = 0;
    detail::get_u32(in, rank);
    if (rank > 8) throw ValidationError("checkpoint tensor '" + t.name + "' has rank " + std::to_string(rank));
    for (std::uint32_t i = 0; i < rank; ++i) {
      std::uint32_t d = 0;
      detail::get_u32(in, d);
      t.shape.push_back(d);
    }
    t.values.resize(ad::shape_size(t.shape));
    for (float& v : t.values) {
      std::uint32_t bits = 0;
      detail::get_u32(in, bits);
      v = std::bit_cast<float>(bits);
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline void save_archive(const std::string& path, const TensorArchive& archive) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  write_archive(out, archive);
  if (!out) throw std::runtime_error("failed writing checkpoint " + path);
}

inline TensorArchive load_archive(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read checkpoint " + path);
  return read_archive(in);
}

inline TensorArchive to_archive(const ad::ParameterList<float>& params) {
  TensorArchive out;
  for (const auto& p : params)
    out.push_back({p.name, p.tensor.shape(), {p.tensor.values().begin(), p.tensor.values().end()}});
  return out;
}

inline const NamedTensor& find_tensor(const TensorArchive& archive, const std::string& name) {
  for (const auto& t : archive)
    if (t.name == name) return t;
  throw ValidationError("checkpoint has no tensor '" + name + "'");
}

/// Copies archive values into `params`. Unknown or missing names and shape
/// mismatches are errors naming the tensors involved.
inline void load_parameters(const TensorArchive& archive, ad::ParameterList<float>& params) {
  std::map<std::string, const NamedTensor*> by_name;
  for (const auto& t : archive) {
    if (!by_name.emplace(t.name, &t).second)
      throw ValidationError("checkpoint repeats tensor '" + t.name + "'");
  }
  std::string unknown, missing;
  std::map<std::string, bool> expected;
  for (const auto& p : params) expected[p.name] = true;
  for (const auto& t : archive)
    if (!expected.count(t.name)) unknown += (unknown.empty() ? "" : ", ") + t.name;
  for (const auto& p : params)
    if (!by_name.count(p.name)) missing += (missing.empty() ? "" : ", ") + p.name;
  if (!unknown.empty()) throw ValidationError("checkpoint has unknown tensors: " + unknown);
  if (!missing.empty()) throw ValidationError("checkpoint lacks tensors: " + missing);
  for (auto& p : params) {
    const auto& t = *by_name.at(p.name);
    if (t.shape != p.tensor.shape()) {
      throw ValidationError("checkpoint tensor '" + p.name + "' has shape " +
                            ad::shape_string(t.shape) + ", model expects " +
                            ad::shape_string(p.tensor.shape()));
    }
    p.tensor.assign(t.values);
  }
}

}  // namespace twag::io

#endif  // TWAG_IO_CHECKPOINT_HPP
