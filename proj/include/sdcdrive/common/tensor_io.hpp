// Copyright 2026 The sdcdrive Authors.
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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace sdcdrive {

// Binary tensor container.
//
// Layout (all integers little-endian):
//   bytes 0..3   magic "SDCT"
//   byte  4      format version (1)
//   byte  5      dtype code (see DType)
//   byte  6      rank
//   byte  7      reserved, 0
//   rank x u32   dimensions, outermost first
//   payload      row-major elements, little-endian
enum class DType : std::uint8_t { kU8 = 1, kF32 = 2, kF64 = 3, kI32 = 4 };

std::size_t dtype_size(DType t);

struct Tensor {
  DType dtype = DType::kU8;
  std::vector<std::uint32_t> shape;
  std::vector<std::byte> payload;  // little-endian element bytes

  std::size_t element_count() const;
  bool operator==(const Tensor&) const = default;

  static Tensor from_u8(std::vector<std::uint32_t> shape, std::span<const std::uint8_t> v);
  static Tensor from_f32(std::vector<std::uint32_t> shape, std::span<const float> v);
  static Tensor from_f64(std::vector<std::uint32_t> shape, std::span<const double> v);

  std::vector<std::uint8_t> to_u8() const;
  std::vector<float> to_f32() const;
  std::vector<double> to_f64() const;
};

void write_tensor(std::ostream& out, const Tensor& t);
Tensor read_tensor(std::istream& in);
void write_tensor_file(const std::filesystem::path& path, const Tensor& t);
Tensor read_tensor_file(const std::filesystem::path& path);

// Little-endian scalar packing shared with the weight-bundle format.
void append_f32_le(std::vector<std::byte>& out, float v);
float read_f32_le(const std::byte* p);

}  // namespace sdcdrive
