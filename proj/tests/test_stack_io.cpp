#include <doctest.h>

#include <sstream>

#include "gi/stack_io.hpp"

using namespace gi;

namespace {

FrameStack small_stack() {
  ExperimentParams p;
  p.source = SourceKind::Thermal;
  p.mu = 0.9;
  p.modes_per_pixel = 2;
  p.eta1 = 0.8;
  p.eta2 = 0.6;
  p.resolution_cells = 3;
  p.frames = 40;
  return sample_stack(p, MaskSpec::blocks(3, 2), 0xABCDEF);
}

}  // namespace

TEST_CASE("stack container round-trips bit-exactly") {
  const FrameStack st = small_stack();
  std::stringstream buf;
  write_stack(buf, st);
  const FrameStack back = read_stack(buf);
  CHECK(back.frames == st.frames);
  CHECK(back.seed == st.seed);
  CHECK(back.normalized == st.normalized);
  CHECK(back.mask.rows == st.mask.rows);
  CHECK(back.mask.cols == st.mask.cols);
  CHECK(back.mask.transmission == st.mask.transmission);
  CHECK(back.params.mu == st.params.mu);
  CHECK(back.params.eta1 == st.params.eta1);
  CHECK(back.params.eta2 == st.params.eta2);
  CHECK(back.params.modes_per_pixel == st.params.modes_per_pixel);
  CHECK((back.params.source == st.params.source));
  CHECK(back.obj_counts == st.obj_counts);
  CHECK(back.ref_counts == st.ref_counts);
}

TEST_CASE("normalized stacks round-trip their real-valued payload") {
  ExperimentParams p;
  p.source = SourceKind::TwinBeam;
  p.mu = 0.2;
  p.pump_mu_variance = std::pow(0.056, 2);
  p.frames = 50;
  p.resolution_cells = 2;
  const MaskSpec mask = MaskSpec::blocks(2, 2);
  const FrameStack st = normalize_frames(sample_stack(p, mask, 5));
  std::stringstream buf;
  write_stack(buf, st);
  const FrameStack back = read_stack(buf);
  CHECK(back.normalized);
  CHECK(back.obj_values == st.obj_values);
  CHECK(back.ref_values == st.ref_values);
  CHECK(back.frame_mu == st.frame_mu);
}

TEST_CASE("reader rejects foreign and truncated data") {
  std::stringstream bad("not a stack at all");
  CHECK_THROWS_AS(read_stack(bad), std::runtime_error);

  const FrameStack st = small_stack();
  std::stringstream buf;
  write_stack(buf, st);
  std::string bytes = buf.str();
  bytes.resize(bytes.size() / 2);
  std::stringstream cut(bytes);
  CHECK_THROWS_AS(read_stack(cut), std::runtime_error);
}

TEST_CASE("csv export carries one row per frame and cell") {
  const FrameStack st = small_stack();
  std::stringstream out;
  export_stack_csv(out, st);
  std::string line;
  long rows = 0, comments = 0;
  bool header = false;
  while (std::getline(out, line)) {
    if (line.rfind('#', 0) == 0) {
      ++comments;
      continue;
    }
    if (line.rfind("frame,", 0) == 0) {
      header = true;
      continue;
    }
    ++rows;
  }
  CHECK(header);
  CHECK(comments >= 1);
  CHECK(rows == st.frames * st.cell_count());
}
