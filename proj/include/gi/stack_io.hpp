#pragma once

#include <iosfwd>
#include <string>

#include "gi/simulator.hpp"

namespace gi {

/// Little-endian binary frame-stack container, format version 1:
///   magic "GISTACK\0", u32 version, u32 dtype (0 = u32 counts, 1 = f64),
///   u32 rows, u32 cols, u64 frames, u64 seed,
///   params snapshot (u8 source, f64 mu, u64 modes, f64 eta1, f64 eta2,
///                    u64 cells, u64 frames_requested, f64 pump_mu_variance),
///   u8 has_frame_mu, mask transmissions (rows*cols u8),
///   [frames f64 mu values], then per frame the object-arm counts followed
///   by the reference-arm counts, row-major.
void write_stack(std::ostream& out, const FrameStack& stack);
void write_stack_file(const std::string& path, const FrameStack& stack);

FrameStack read_stack(std::istream& in);
FrameStack read_stack_file(const std::string& path);

/// Plain-text export for small stacks: one row per (frame, cell).
void export_stack_csv(std::ostream& out, const FrameStack& stack);

}  // namespace gi
