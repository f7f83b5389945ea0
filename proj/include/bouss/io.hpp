#pragma once

/// @file io.hpp
/// Field dumps, checkpoint/restart and the residual log.
///
/// Dump layout in a directory: header.txt (grid sizes and coordinates),
/// u.bin v.bin p.bin theta.bin (raw little-endian float64, row-major, j
/// outer) and profiles.csv (all four unknowns sampled on the theta lattice).
/// Checkpoints store the grid spec plus its derived coordinate arrays and
/// both time levels, so a serial restart reproduces the residual sequence
/// bit-identically.

#include <memory>
#include <string>

#include "bouss/config.hpp"
#include "bouss/timestepper.hpp"

namespace bouss {

void dump_fields(const State& s, const StaggeredGrid& grid, const std::string& dir);

/// Reads a dump written by dump_fields; the grid must match the header.
State load_fields(const std::string& dir, const StaggeredGrid& grid);

struct Checkpoint {
    GridSpec spec;
    std::unique_ptr<StaggeredGrid> grid; ///< stable address; fields point here
    State state;
    History history;
    long residual_lines = 0; ///< log length at checkpoint time
};

void write_checkpoint(const State& s, const History& h, const GridSpec& spec,
                      long residual_lines, const std::string& path);
Checkpoint read_checkpoint(const std::string& path);

/// Append-only step log "step t res_u res_v res_theta", full precision,
/// flushed every flush_every records and on destruction.
class ResidualLog {
public:
    ResidualLog(const std::string& path, bool append, long flush_every = 100);
    ~ResidualLog();
    void record(long step, double t, const Residuals& r);
    void flush();
    long lines() const { return lines_; }

private:
    std::string path_;
    std::string buffer_;
    long pending_ = 0;
    long lines_ = 0;
    long flush_every_ = 100;
};

/// Truncates a residual log to its first n lines (restart rewind).
void truncate_log(const std::string& path, long n);

} // namespace bouss
