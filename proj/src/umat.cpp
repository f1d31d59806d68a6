// Copyright 2026 The qsynth Authors
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
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "qsynth/errors.hpp"
#include "qsynth/toolkit.hpp"

namespace qsynth {

namespace {

constexpr std::string_view kMagic = "UMAT";
constexpr std::size_t kHeaderSize = 6;
constexpr int kMaxQubits = 12;

void put_f64(std::string &out, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFU));
    }
}

double get_f64(std::string_view in, std::size_t pos) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + static_cast<std::size_t>(b)])) << (8 * b);
    }
    return std::bit_cast<double>(bits);
}

} // namespace

std::string encode_umat(const Unitary &u) {
    std::string out;
    out.reserve(kHeaderSize + 16 * u.dim() * u.dim());
    out.append(kMagic);
    out.push_back(static_cast<char>(kUmatVersion));
    out.push_back(static_cast<char>(u.n_qubits()));
    const Matrix &m = u.matrix();
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
            put_f64(out, m(row, col).real());
            put_f64(out, m(row, col).imag());
        }
    }
    return out;
}

Unitary decode_umat(std::string_view bytes) {
    using Kind = FormatError::Kind;
    if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
        throw FormatError(Kind::BadMagic, "bad magic: not a UMAT file");
    }
    if (bytes.size() < kHeaderSize) {
        throw FormatError(Kind::Truncated, "truncated UMAT header");
    }
    if (static_cast<std::uint8_t>(bytes[4]) != kUmatVersion) {
        throw FormatError(Kind::BadVersion, "unsupported UMAT version " + std::to_string(static_cast<unsigned char>(bytes[4])));
    }
    const int n = static_cast<unsigned char>(bytes[5]);
    if (n < 1 || n > kMaxQubits) {
        throw FormatError(Kind::BadSize, "UMAT qubit count " + std::to_string(n) + " out of range");
    }
    const std::size_t d = dim_of(n);
    const std::size_t expected = kHeaderSize + 16 * d * d;
    if (bytes.size() < expected) {
        throw FormatError(Kind::Truncated, "truncated UMAT payload: expected " + std::to_string(expected) +
                                               " bytes, got " + std::to_string(bytes.size()));
    }
    if (bytes.size() > expected) {
        throw FormatError(Kind::BadSize, "trailing bytes after UMAT payload");
    }
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::size_t pos = kHeaderSize;
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
            const double re = get_f64(bytes, pos);
            const double im = get_f64(bytes, pos + 8);
            m(row, col) = Complex{re, im};
            pos += 16;
        }
    }
    try {
        return Unitary(std::move(m));
    } catch (const NotUnitary &e) {
        throw FormatError(Kind::NotUnitary, e.what());
    }
}

void write_unitary(const Unitary &u, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(FormatError::Kind::Io, "cannot open " + path.string() + " for writing");
    }
    const std::string bytes = encode_umat(u);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw FormatError(FormatError::Kind::Io, "write failed: " + path.string());
    }
}

Unitary read_unitary(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError(FormatError::Kind::Io, "cannot open " + path.string());
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_umat(bytes);
}

} // namespace qsynth
