#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "gns/spectral/fft.hpp"

namespace gns {

// Binary record layout (little-endian), see docs/formats.md:
//   char[8]  magic "GNSSPEC1"
//   uint32   n_per_axis
//   uint32   reserved (0)
//   float64  period
//   float64  dealias_fraction
//   n^3 x { float64 re, float64 im } in row-major (i1, i2, i3) full-lattice order
inline constexpr std::array<char, 8> kFieldMagic{'G', 'N', 'S', 'S', 'P', 'E', 'C', '1'};

static_assert(std::endian::native == std::endian::little,
              "field serialization assumes a little-endian host");

namespace detail {

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("field record: unexpected end of stream");
    return v;
}

}  // namespace detail

inline void write_field_record(std::ostream& os, const SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    os.write(kFieldMagic.data(), kFieldMagic.size());
    detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(n));
    detail::put<std::uint32_t>(os, 0);
    detail::put<double>(os, g.period());
    detail::put<double>(os, g.dealias_fraction());
    std::vector<double> row(2 * static_cast<std::size_t>(n));
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
            for (int i3 = 0; i3 < n; ++i3) {
                const cplx v = f.full(i1, i2, i3);
                row[2 * i3] = v.real();
                row[2 * i3 + 1] = v.imag();
            }
            os.write(reinterpret_cast<const char*>(row.data()),
                     static_cast<std::streamsize>(row.size() * sizeof(double)));
        }
    if (!os) throw IoError("field record: write failed");
}

inline SpectralField read_field_record(std::istream& is) {
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kFieldMagic) throw IoError("field record: bad magic");
    const auto n = detail::get<std::uint32_t>(is);
    (void)detail::get<std::uint32_t>(is);
    const double period = detail::get<double>(is);
    const double dealias = detail::get<double>(is);
    const Grid g(static_cast<int>(n), period, dealias);

    const int ni = static_cast<int>(n);
    std::vector<cplx> full(g.physical_size());
    is.read(reinterpret_cast<char*>(full.data()),
            static_cast<std::streamsize>(full.size() * sizeof(cplx)));
    if (!is) throw IoError("field record: truncated coefficient block");

    auto at = [&](int a, int b, int c) {
        return full[(static_cast<std::size_t>(a) * ni + b) * ni + c];
    };
    SpectralField f(g);
    double defect = 0.0, scale = 0.0;
    for (int i1 = 0; i1 < ni; ++i1)
        for (int i2 = 0; i2 < ni; ++i2)
            for (int i3 = 0; i3 < ni; ++i3) {
                const cplx v = at(i1, i2, i3);
                const cplx m = at((ni - i1) % ni, (ni - i2) % ni, (ni - i3) % ni);
                defect = std::max(defect, std::abs(v - std::conj(m)));
                scale = std::max(scale, std::abs(v));
                if (i3 <= ni / 2) f.at(i1, i2, i3) = v;
            }
    if (defect > kCorruptionTolerance * std::max(1.0, scale))
        throw CorruptedFieldError("field record: coefficients are not Hermitian");
    return f;
}

inline nlohmann::json field_sidecar(const SpectralField& f) {
    const Grid& g = f.grid();
    return {
        {"format", "GNSSPEC1"},
        {"n_per_axis", g.n()},
        {"period", g.period()},
        {"dealias_fraction", g.dealias_fraction()},
        {"layout", "row-major (i1,i2,i3) full lattice, interleaved re/im float64, little-endian"},
        {"header_bytes", 32},
        {"records", 1},
        {"domain", "periodic box [0,L)^3"},
    };
}

/// Writes <path> (binary) and <path>.json (sidecar).
inline void save_field(const std::filesystem::path& path, const SpectralField& f) {
    {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open " + path.string());
        write_field_record(os, f);
    }
    std::ofstream js(path.string() + ".json");
    if (!js) throw IoError("cannot open sidecar for " + path.string());
    js << field_sidecar(f).dump(2) << '\n';
}

inline SpectralField load_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    return read_field_record(is);
}

}  // namespace gns
