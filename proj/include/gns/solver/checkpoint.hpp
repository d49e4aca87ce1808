#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "gns/spectral/field_io.hpp"
#include "gns/solver/trajectory.hpp"

namespace gns {

inline std::string state_file_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "state_%05zu.bin", i);
    return buf;
}

/// Writes every `stride`-th state (and always the last) as
/// <dir>/state_NNNNN.bin, three field records per file, plus
/// <dir>/manifest.json. Returns the file names written, manifest last.
inline std::vector<std::string> save_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                                                const std::string& config_hash, std::size_t stride = 1) {
    if (traj.empty()) throw DomainError("save_trajectory: empty trajectory");
    if (stride == 0) stride = 1;
    std::filesystem::create_directories(dir);
    nlohmann::json m;
    m["format"] = "GNSTRAJ1";
    m["config_hash"] = config_hash;
    m["grid"] = {{"n_per_axis", traj.grid().n()},
                 {"period", traj.grid().period()},
                 {"dealias_fraction", traj.grid().dealias_fraction()}};
    m["records_per_file"] = 3;
    std::vector<std::string> written;
    nlohmann::json times = nlohmann::json::array(), files = nlohmann::json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (i % stride != 0 && i + 1 != traj.size()) continue;
        const std::string name = state_file_name(i);
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) throw IoError("cannot open " + (dir / name).string());
        for (int j = 0; j < 3; ++j) write_field_record(os, traj.state(i)[j]);
        times.push_back(traj.times()[i]);
        files.push_back(name);
        written.push_back(name);
    }
    m["times"] = times;
    m["files"] = files;
    std::ofstream ms(dir / "manifest.json");
    if (!ms) throw IoError("cannot write trajectory manifest");
    ms << m.dump(2) << '\n';
    written.push_back("manifest.json");
    return written;
}

struct LoadedTrajectory {
    Trajectory trajectory;
    std::string config_hash;
};

inline LoadedTrajectory load_trajectory(const std::filesystem::path& manifest_path) {
    std::ifstream is(manifest_path);
    if (!is) throw IoError("cannot open " + manifest_path.string());
    nlohmann::json m;
    try {
        is >> m;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("trajectory manifest: " + std::string(e.what()));
    }
    if (m.value("format", "") != "GNSTRAJ1") throw IoError("trajectory manifest: unknown format");
    const auto& times = m.at("times");
    const auto& files = m.at("files");
    if (times.size() != files.size()) throw IoError("trajectory manifest: times/files length mismatch");
    const auto dir = manifest_path.parent_path();
    LoadedTrajectory out;
    out.config_hash = m.value("config_hash", "");
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::ifstream fs(dir / files[i].get<std::string>(), std::ios::binary);
        if (!fs) throw IoError("cannot open state file " + files[i].get<std::string>());
        SpectralField a = read_field_record(fs);
        SpectralField b = read_field_record(fs);
        SpectralField c = read_field_record(fs);
        out.trajectory.push_back(times[i].get<double>(), VelocityField(std::move(a), std::move(b), std::move(c)));
    }
    return out;
}

}  // namespace gns
