#ifndef BICRIT_RENDER_HPP
#define BICRIT_RENDER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bicrit/classify.hpp"

namespace bicrit {

enum class RenderKind { Per1Slice, Multibrot, ParabolicSlice, Julia, Petals };
enum class Plane { B, Y1 };

const char* to_string(RenderKind k);
const char* to_string(Plane p);

/// Pixel labels. Parameter-plane kinds use the Locus values plus NoConvergence.
/// Julia images store the index of the absorbing target, kNoTarget, or
/// kOrbitUndetermined for orbits still creeping toward a target.
/// Petal images store kBasin / kEscaped, and kCurveBase + k on curve k.
namespace label {
constexpr std::int32_t kConnected = 0;
constexpr std::int32_t kHyperbolicShift = 1;
constexpr std::int32_t kParabolicShift = 2;
constexpr std::int32_t kUndetermined = 3;
constexpr std::int32_t kNoConvergence = 4;
constexpr std::int32_t kNoTarget = -1;
constexpr std::int32_t kOrbitUndetermined = -2;
constexpr std::int32_t kBasin = 0;
constexpr std::int32_t kEscaped = 1;
constexpr std::int32_t kCurveBase = 10;
}  // namespace label

std::int32_t locus_label(Locus l);

struct RenderJob {
  RenderKind kind = RenderKind::Per1Slice;
  int n = 2;
  cd lambda{0.5};        // Per1Slice
  Plane plane = Plane::B;  // Multibrot
  std::optional<BicritMapd> map;  // Julia: coefficients, or
  std::optional<ModuliPointd> moduli;  // a moduli point to reconstruct
  cd center{0};
  double width = 4, height = 4;
  int pixels_x = 512, pixels_y = 512;
  ClassifyBudget budget;
  int escape_iter = 5000;  // Multibrot and Petals escape time
  double phi_tol = 1e-10;  // ParabolicSlice scores
  int phi_max_m = 20000;
  int depth = 4;           // Petals
  double petal_spacing = 1e-3;

  void validate() const;
  cd pixel(int row, int col) const;
  /// Nearest pixel to a point of the plane, if inside the window.
  std::optional<std::pair<int, int>> locate(cd z) const;
};

/// Reads `key=value` lines; '#' starts a comment. Complex values are `re,im`.
RenderJob parse_job(const std::string& text);
RenderJob load_job(const std::string& path);
/// Canonical text form; parse_job(job_text(j)) reproduces j.
std::string job_text(const RenderJob& job);

struct RasterImage {
  int width = 0, height = 0;
  std::vector<std::int32_t> labels;  // row-major
  std::vector<double> scores;        // slow_rate, |Phi|, or escape time; 0 when absent

  std::int32_t label_at(int row, int col) const { return labels[std::size_t(row) * width + col]; }
  double score_at(int row, int col) const { return scores[std::size_t(row) * width + col]; }
};

/// Worker count: BICRIT_THREADS if set, else the hardware concurrency.
int default_threads();

/// Renders rows [row_begin, row_end) of the job's frame.
RasterImage render_rows(const RenderJob& job, int row_begin, int row_end, int threads = 0);
RasterImage render(const RenderJob& job, int threads = 0);

RasterImage render_per1_slice(const RenderJob& job, int threads = 0);
RasterImage render_multibrot(const RenderJob& job, int threads = 0);
RasterImage render_parabolic_slice(const RenderJob& job, int threads = 0);
RasterImage render_julia(const RenderJob& job, int threads = 0);
RasterImage render_petals(const RenderJob& job, int threads = 0);

/// Stacks strips rendered separately.
RasterImage concatenate_rows(const std::vector<RasterImage>& strips);

/// Fraction of pixels whose label agrees with the label at the nearest pixel
/// to rotation * z. Pixels with a differently labeled 8-neighbour (at either
/// end) and rotated points outside the window are excluded.
double rotation_agreement(const RasterImage& img, const RenderJob& job, cd rotation);

/// 8-bit gray levels: labels set the base shade, scores add geometric bands.
std::vector<std::uint8_t> gray_levels(const RasterImage& img, RenderKind kind);
void write_pgm(const std::string& path, const RasterImage& img, RenderKind kind);
void write_png(const std::string& path, const RasterImage& img, RenderKind kind);
void write_label_csv(const std::string& path, const RasterImage& img);

/// SHA-1 of "blob <len>\0" + job_text(job), as git computes blob ids.
std::string content_hash(const RenderJob& job);
std::string metadata_text(const RenderJob& job, const RasterImage& img, double seconds, int threads);

}  // namespace bicrit

#endif  // BICRIT_RENDER_HPP
