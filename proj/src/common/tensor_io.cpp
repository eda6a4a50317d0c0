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

#include "sdcdrive/common/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sdcdrive {
namespace {

constexpr std::array<char, 4> kMagic = {'S', 'D', 'C', 'T'};
constexpr std::uint8_t kVersion = 1;

template <typename U>
void put_le(std::vector<std::byte>& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
  }
}

template <typename U>
U get_le(const std::byte* p) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(std::to_integer<std::uint8_t>(p[i])) << (8 * i);
  }
  return v;
}

template <typename F, typename U>
std::vector<std::byte> pack_floats(std::span<const F> v) {
  std::vector<std::byte> out;
  out.reserve(v.size() * sizeof(F));
  for (F x : v) put_le<U>(out, std::bit_cast<U>(x));
  return out;
}

template <typename F, typename U>
std::vector<F> unpack_floats(const std::vector<std::byte>& bytes) {
  std::vector<F> out(bytes.size() / sizeof(F));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::bit_cast<F>(get_le<U>(bytes.data() + i * sizeof(F)));
  }
  return out;
}

std::size_t product(const std::vector<std::uint32_t>& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

void check_count(const std::vector<std::uint32_t>& shape, std::size_t n) {
  if (product(shape) != n) throw std::invalid_argument("tensor shape does not match element count");
}

}  // namespace

std::size_t dtype_size(DType t) {
  switch (t) {
    case DType::kU8: return 1;
    case DType::kF32: return 4;
    case DType::kF64: return 8;
    case DType::kI32: return 4;
  }
  throw std::invalid_argument("unknown dtype");
}

std::size_t Tensor::element_count() const { return product(shape); }

Tensor Tensor::from_u8(std::vector<std::uint32_t> shape, std::span<const std::uint8_t> v) {
  check_count(shape, v.size());
  Tensor t{DType::kU8, std::move(shape), {}};
  t.payload.resize(v.size());
  std::memcpy(t.payload.data(), v.data(), v.size());
  return t;
}

Tensor Tensor::from_f32(std::vector<std::uint32_t> shape, std::span<const float> v) {
  check_count(shape, v.size());
  return {DType::kF32, std::move(shape), pack_floats<float, std::uint32_t>(v)};
}

Tensor Tensor::from_f64(std::vector<std::uint32_t> shape, std::span<const double> v) {
  check_count(shape, v.size());
  return {DType::kF64, std::move(shape), pack_floats<double, std::uint64_t>(v)};
}

std::vector<std::uint8_t> Tensor::to_u8() const {
  if (dtype != DType::kU8) throw std::runtime_error("tensor dtype is not u8");
  std::vector<std::uint8_t> out(payload.size());
  std::memcpy(out.data(), payload.data(), payload.size());
  return out;
}

std::vector<float> Tensor::to_f32() const {
  if (dtype != DType::kF32) throw std::runtime_error("tensor dtype is not f32");
  return unpack_floats<float, std::uint32_t>(payload);
}

std::vector<double> Tensor::to_f64() const {
  if (dtype != DType::kF64) throw std::runtime_error("tensor dtype is not f64");
  return unpack_floats<double, std::uint64_t>(payload);
}

void write_tensor(std::ostream& out, const Tensor& t) {
  if (t.payload.size() != t.element_count() * dtype_size(t.dtype)) {
    throw std::invalid_argument("tensor payload size mismatch");
  }
  if (t.shape.size() > 255) throw std::invalid_argument("tensor rank too large");
  std::vector<std::byte> header;
  for (char c : kMagic) header.push_back(static_cast<std::byte>(c));
  header.push_back(static_cast<std::byte>(kVersion));
  header.push_back(static_cast<std::byte>(t.dtype));
  header.push_back(static_cast<std::byte>(t.shape.size()));
  header.push_back(std::byte{0});
  for (auto d : t.shape) put_le<std::uint32_t>(header, d);
  out.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(t.payload.data()),
            static_cast<std::streamsize>(t.payload.size()));
  if (!out) throw std::runtime_error("failed writing tensor");
}

Tensor read_tensor(std::istream& in) {
  std::array<std::byte, 8> head{};
  if (!in.read(reinterpret_cast<char*>(head.data()), head.size())) {
    throw std::runtime_error("truncated tensor header");
  }
  for (std::size_t i = 0; i < kMagic.size(); ++i) {
    if (static_cast<char>(head[i]) != kMagic[i]) throw std::runtime_error("bad tensor magic");
  }
  if (std::to_integer<std::uint8_t>(head[4]) != kVersion) {
    throw std::runtime_error("unsupported tensor version");
  }
  Tensor t;
  const auto code = std::to_integer<std::uint8_t>(head[5]);
  if (code < 1 || code > 4) throw std::runtime_error("bad tensor dtype");
  t.dtype = static_cast<DType>(code);
  const auto rank = std::to_integer<std::uint8_t>(head[6]);
  std::vector<std::byte> dims(4 * static_cast<std::size_t>(rank));
  if (!in.read(reinterpret_cast<char*>(dims.data()), static_cast<std::streamsize>(dims.size()))) {
    throw std::runtime_error("truncated tensor shape");
  }
  for (std::size_t i = 0; i < rank; ++i) t.shape.push_back(get_le<std::uint32_t>(dims.data() + 4 * i));
  t.payload.resize(t.element_count() * dtype_size(t.dtype));
  if (!in.read(reinterpret_cast<char*>(t.payload.data()), static_cast<std::streamsize>(t.payload.size()))) {
    throw std::runtime_error("truncated tensor payload");
  }
  return t;
}

void write_tensor_file(const std::filesystem::path& path, const Tensor& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_tensor(out, t);
}

Tensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_tensor(in);
}

void append_f32_le(std::vector<std::byte>& out, float v) {
  put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
}

float read_f32_le(const std::byte* p) { return std::bit_cast<float>(get_le<std::uint32_t>(p)); }

}  // namespace sdcdrive
