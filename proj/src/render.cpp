#include "bicrit/render.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "bicrit/parabolic.hpp"

namespace bicrit {

const char* to_string(RenderKind k) {
  switch (k) {
    case RenderKind::Per1Slice: return "per1";
    case RenderKind::Multibrot: return "multibrot";
    case RenderKind::ParabolicSlice: return "parabolic";
    case RenderKind::Julia: return "julia";
    case RenderKind::Petals: return "petals";
  }
  return "unknown";
}

const char* to_string(Plane p) { return p == Plane::B ? "B" : "Y1"; }

std::int32_t locus_label(Locus l) {
  switch (l) {
    case Locus::Connected: return label::kConnected;
    case Locus::HyperbolicShift: return label::kHyperbolicShift;
    case Locus::ParabolicShift: return label::kParabolicShift;
    case Locus::Undetermined: return label::kUndetermined;
  }
  return label::kUndetermined;
}

void RenderJob::validate() const {
  if (n < 2) throw Error(Errc::InvalidArgument, "degree must be >= 2");
  if (!(width > 0) || !(height > 0)) throw Error(Errc::InvalidArgument, "window width and height must be positive");
  if (pixels_x < 1 || pixels_y < 1) throw Error(Errc::InvalidArgument, "resolution must be at least 1x1");
  if (kind == RenderKind::Per1Slice && lambda == cd(0)) throw Error(Errc::ZeroMultiplier, "lambda = 0");
  if (kind == RenderKind::Julia && !map && !moduli) throw Error(Errc::InvalidArgument, "julia job needs a map or X, Y");
  if (map && map->degree() != n) throw Error(Errc::WrongDegree, "map degree differs from n");
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be >= 0");
  if (escape_iter < 1 || budget.max_iter_hyperbolic < 1 || budget.max_iter_parabolic < 1 || phi_max_m < 2) {
    throw Error(Errc::InvalidArgument, "iteration budgets must be positive");
  }
}

cd RenderJob::pixel(int row, int col) const {
  const double x = center.real() - width / 2 + (col + 0.5) * width / pixels_x;
  const double y = center.imag() + height / 2 - (row + 0.5) * height / pixels_y;
  return {x, y};
}

std::optional<std::pair<int, int>> RenderJob::locate(cd z) const {
  const double fx = (z.real() - (center.real() - width / 2)) / width * pixels_x;
  const double fy = ((center.imag() + height / 2) - z.imag()) / height * pixels_y;
  if (!(fx >= 0 && fx < pixels_x && fy >= 0 && fy < pixels_y)) return std::nullopt;
  return std::pair{static_cast<int>(fy), static_cast<int>(fx)};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(v.substr(used)) != "") throw Error(Errc::InvalidArgument, "bad number for " + key + ": " + v);
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_real(key, v);
  if (x != std::floor(x) || std::abs(x) > 2e9) throw Error(Errc::InvalidArgument, "bad integer for " + key + ": " + v);
  return static_cast<int>(x);
}

cd parse_complex(const std::string& key, const std::string& v) {
  const auto comma = v.find(',');
  if (comma == std::string::npos) return {parse_real(key, v), 0.0};
  return {parse_real(key, v.substr(0, comma)), parse_real(key, v.substr(comma + 1))};
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fmt(cd z) { return fmt(z.real()) + "," + fmt(z.imag()); }

RenderKind parse_kind(const std::string& v) {
  static const std::map<std::string, RenderKind> names{
      {"per1", RenderKind::Per1Slice},         {"Per1Slice", RenderKind::Per1Slice},
      {"multibrot", RenderKind::Multibrot},     {"Multibrot", RenderKind::Multibrot},
      {"parabolic", RenderKind::ParabolicSlice}, {"ParabolicSlice", RenderKind::ParabolicSlice},
      {"julia", RenderKind::Julia},             {"Julia", RenderKind::Julia},
      {"petals", RenderKind::Petals},           {"Petals", RenderKind::Petals}};
  const auto it = names.find(v);
  if (it == names.end()) throw Error(Errc::InvalidArgument, "unknown kind: " + v);
  return it->second;
}

}  // namespace

RenderJob parse_job(const std::string& text) {
  RenderJob job;
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidArgument, "line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  std::optional<cd> a, b, c, d, X, Y;
  for (const auto& [key, v] : kv) {
    if (key == "kind") job.kind = parse_kind(v);
    else if (key == "n") job.n = parse_int(key, v);
    else if (key == "lambda") job.lambda = parse_complex(key, v);
    else if (key == "plane") {
      if (v == "B" || v == "b") job.plane = Plane::B;
      else if (v == "Y1" || v == "y1") job.plane = Plane::Y1;
      else throw Error(Errc::InvalidArgument, "unknown plane: " + v);
    } else if (key == "a") a = parse_complex(key, v);
    else if (key == "b") b = parse_complex(key, v);
    else if (key == "c") c = parse_complex(key, v);
    else if (key == "d") d = parse_complex(key, v);
    else if (key == "X") X = parse_complex(key, v);
    else if (key == "Y") Y = parse_complex(key, v);
    else if (key == "center") job.center = parse_complex(key, v);
    else if (key == "width") job.width = parse_real(key, v);
    else if (key == "height") job.height = parse_real(key, v);
    else if (key == "pixels") {
      const auto x = v.find('x');
      if (x == std::string::npos) throw Error(Errc::InvalidArgument, "pixels must be WxH");
      job.pixels_x = parse_int(key, v.substr(0, x));
      job.pixels_y = parse_int(key, v.substr(x + 1));
    } else if (key == "max_iter_hyperbolic") job.budget.max_iter_hyperbolic = parse_int(key, v);
    else if (key == "max_iter_parabolic") job.budget.max_iter_parabolic = parse_int(key, v);
    else if (key == "eps") job.budget.eps = parse_real(key, v);
    else if (key == "contraction_steps") job.budget.contraction_steps = parse_int(key, v);
    else if (key == "parabolic_steps") job.budget.parabolic_steps = parse_int(key, v);
    else if (key == "parabolic_band") job.budget.parabolic_band = parse_real(key, v);
    else if (key == "escape_iter") job.escape_iter = parse_int(key, v);
    else if (key == "phi_tol") job.phi_tol = parse_real(key, v);
    else if (key == "phi_max_m") job.phi_max_m = parse_int(key, v);
    else if (key == "depth") job.depth = parse_int(key, v);
    else if (key == "petal_spacing") job.petal_spacing = parse_real(key, v);
    else throw Error(Errc::InvalidArgument, "unknown key: " + key);
  }
  if (a || b || c || d) {
    if (!(a && b && c && d)) throw Error(Errc::InvalidArgument, "map needs all of a, b, c, d");
    job.map = BicritMapd(job.n, *a, *b, *c, *d);
  }
  if (X || Y) {
    if (!(X && Y)) throw Error(Errc::InvalidArgument, "moduli point needs both X and Y");
    job.moduli = ModuliPointd{job.n, *X, *Y};
  }
  job.validate();
  return job;
}

RenderJob load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read job file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_job(ss.str());
}

std::string job_text(const RenderJob& job) {
  std::ostringstream os;
  os << "kind=" << to_string(job.kind) << "\n";
  os << "n=" << job.n << "\n";
  os << "lambda=" << fmt(job.lambda) << "\n";
  os << "plane=" << to_string(job.plane) << "\n";
  if (job.map) {
    os << "a=" << fmt(job.map->a()) << "\nb=" << fmt(job.map->b()) << "\nc=" << fmt(job.map->c())
       << "\nd=" << fmt(job.map->d()) << "\n";
  }
  if (job.moduli) os << "X=" << fmt(job.moduli->X) << "\nY=" << fmt(job.moduli->Y) << "\n";
  os << "center=" << fmt(job.center) << "\n";
  os << "width=" << fmt(job.width) << "\nheight=" << fmt(job.height) << "\n";
  os << "pixels=" << job.pixels_x << "x" << job.pixels_y << "\n";
  os << "max_iter_hyperbolic=" << job.budget.max_iter_hyperbolic << "\n";
  os << "max_iter_parabolic=" << job.budget.max_iter_parabolic << "\n";
  os << "eps=" << fmt(job.budget.eps) << "\n";
  os << "contraction_steps=" << job.budget.contraction_steps << "\n";
  os << "parabolic_steps=" << job.budget.parabolic_steps << "\n";
  os << "parabolic_band=" << fmt(job.budget.parabolic_band) << "\n";
  os << "escape_iter=" << job.escape_iter << "\n";
  os << "phi_tol=" << fmt(job.phi_tol) << "\nphi_max_m=" << job.phi_max_m << "\n";
  os << "depth=" << job.depth << "\npetal_spacing=" << fmt(job.petal_spacing) << "\n";
  return os.str();
}

int default_threads() {
  if (const char* env = std::getenv("BICRIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Pixel {
  std::int32_t label = 0;
  double score = 0;
};

// Runs kernel(row, col) over rows [r0, r1) with rows handed out dynamically;
// each row is written by exactly one worker.
template <typename Kernel>
RasterImage run_rows(const RenderJob& job, int r0, int r1, int threads, const Kernel& kernel) {
  if (r0 < 0 || r1 > job.pixels_y || r0 > r1) throw Error(Errc::InvalidArgument, "row range outside the frame");
  RasterImage img;
  img.width = job.pixels_x;
  img.height = r1 - r0;
  img.labels.assign(std::size_t(img.width) * img.height, 0);
  img.scores.assign(img.labels.size(), 0.0);
  if (threads <= 0) threads = default_threads();
  threads = std::max(1, std::min(threads, img.height));

  std::atomic<int> next{r0};
  auto work = [&] {
    for (int row = next++; row < r1; row = next++) {
      const std::size_t base = std::size_t(row - r0) * img.width;
      for (int col = 0; col < img.width; ++col) {
        const Pixel p = kernel(row, col);
        img.labels[base + col] = p.label;
        img.scores[base + col] = p.score;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return img;
}

RasterImage per1_rows(const RenderJob& job, int r0, int r1, int threads) {
  return run_rows(job, r0, r1, threads, [&](int row, int col) {
    const auto r = classify_per1_sample(job.n, job.lambda, job.pixel(row, col), job.budget);
    return Pixel{locus_label(r.locus), r.slow_rate.value_or(0.0)};
  });
}

RasterImage multibrot_rows(const RenderJob& job, int r0, int r1, int threads) {
  return run_rows(job, r0, r1, threads, [&](int row, int col) {
    const cd p = job.pixel(row, col);
    const cd b = job.plane == Plane::B || p == cd(0) ? p : std::pow(p, 1.0 / (job.n - 1));
    const double radius = 2.0 + std::abs(b);
    cd z = 0;
    for (int k = 1; k <= job.escape_iter; ++k) {
      z = ipow(z, job.n) + b;
      if (std::abs(z) > radius) return Pixel{label::kHyperbolicShift, double(k)};
    }
    return Pixel{label::kConnected, 0.0};
  });
}

RasterImage parabolic_rows(const RenderJob& job, int r0, int r1, int threads) {
  const SpherePointd one(cd(1));
  return run_rows(job, r0, r1, threads, [&](int row, int col) {
    const cd alpha = alpha_from_X(job.n, job.pixel(row, col));
    if (std::abs(alpha) < 1e-12) {
      return Pixel{locus_label(classify_map(parabolic_normal_form(job.n, cd(0)), job.budget).locus), 0.0};
    }
    const BicritMapd f = parabolic_normal_form(job.n, alpha);
    const auto r = classify_with_targets(f, {{one, cd(1), true, parabolic_chart(f, one)}}, job.budget);
    if (r.locus != Locus::ParabolicShift) return Pixel{locus_label(r.locus), 0.0};
    try {
      return Pixel{label::kParabolicShift, std::abs(fatou_phi(job.n, alpha, job.phi_tol, job.phi_max_m).phi)};
    } catch (const Error&) {
      return Pixel{label::kNoConvergence, 0.0};
    }
  });
}

RasterImage julia_rows(const RenderJob& job, int r0, int r1, int threads) {
  const BicritMapd f = job.map ? *job.map : reconstruct(*job.moduli);
  std::vector<Target> targets;
  try {
    targets = capture_targets(f, multiplier_spectrum(f), job.budget.parabolic_band);
  } catch (const Error&) {
    targets.clear();
  }
  return run_rows(job, r0, r1, threads, [&](int row, int col) {
    const OrbitFate fate = orbit_fate(f, SpherePointd(job.pixel(row, col)), targets, job.budget);
    if (fate.target < 0) return Pixel{fate.undetermined ? label::kOrbitUndetermined : label::kNoTarget, 0.0};
    return Pixel{fate.target, double(fate.iterations)};
  });
}

RasterImage petal_rows(const RenderJob& job, int r0, int r1, int threads) {
  const auto poly = parabolic_polynomial(job.n);
  RasterImage img = run_rows(job, r0, r1, threads, [&](int row, int col) {
    cd z = job.pixel(row, col);
    for (int k = 1; k <= job.escape_iter; ++k) {
      z = ipow(z, job.n) + poly.b;
      if (std::abs(z) > 2.0) return Pixel{label::kEscaped, double(k)};
    }
    return Pixel{label::kBasin, 0.0};
  });
  const PetalFamily fam = petal_family(job.n, job.depth, job.petal_spacing);
  for (int k = static_cast<int>(fam.curves.size()) - 1; k >= 0; --k) {
    for (const cd z : fam.curves[k].points) {
      const auto loc = job.locate(z);
      if (!loc || loc->first < r0 || loc->first >= r1) continue;
      img.labels[std::size_t(loc->first - r0) * img.width + loc->second] = label::kCurveBase + k;
    }
  }
  return img;
}

}  // namespace

RasterImage render_rows(const RenderJob& job, int row_begin, int row_end, int threads) {
  job.validate();
  switch (job.kind) {
    case RenderKind::Per1Slice: return per1_rows(job, row_begin, row_end, threads);
    case RenderKind::Multibrot: return multibrot_rows(job, row_begin, row_end, threads);
    case RenderKind::ParabolicSlice: return parabolic_rows(job, row_begin, row_end, threads);
    case RenderKind::Julia: return julia_rows(job, row_begin, row_end, threads);
    case RenderKind::Petals: return petal_rows(job, row_begin, row_end, threads);
  }
  throw Error(Errc::InvalidArgument, "unknown render kind");
}

RasterImage render(const RenderJob& job, int threads) { return render_rows(job, 0, job.pixels_y, threads); }

namespace {

RasterImage render_kind(const RenderJob& job, RenderKind kind, int threads) {
  if (job.kind != kind) throw Error(Errc::InvalidArgument, std::string("job kind is not ") + to_string(kind));
  return render(job, threads);
}

}  // namespace

RasterImage render_per1_slice(const RenderJob& job, int threads) { return render_kind(job, RenderKind::Per1Slice, threads); }
RasterImage render_multibrot(const RenderJob& job, int threads) { return render_kind(job, RenderKind::Multibrot, threads); }
RasterImage render_parabolic_slice(const RenderJob& job, int threads) {
  return render_kind(job, RenderKind::ParabolicSlice, threads);
}
RasterImage render_julia(const RenderJob& job, int threads) { return render_kind(job, RenderKind::Julia, threads); }
RasterImage render_petals(const RenderJob& job, int threads) { return render_kind(job, RenderKind::Petals, threads); }

RasterImage concatenate_rows(const std::vector<RasterImage>& strips) {
  RasterImage out;
  for (const auto& s : strips) {
    if (out.width == 0) out.width = s.width;
    if (s.width != out.width) throw Error(Errc::InvalidArgument, "strip widths differ");
    out.height += s.height;
    out.labels.insert(out.labels.end(), s.labels.begin(), s.labels.end());
    out.scores.insert(out.scores.end(), s.scores.begin(), s.scores.end());
  }
  return out;
}

double rotation_agreement(const RasterImage& img, const RenderJob& job, cd rotation) {
  auto on_boundary = [&](int r, int c) {
    const auto l = img.label_at(r, c);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int rr = r + dr, cc = c + dc;
        if (rr < 0 || rr >= img.height || cc < 0 || cc >= img.width) continue;
        if (img.label_at(rr, cc) != l) return true;
      }
    }
    return false;
  };
  long agree = 0, total = 0;
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      if (on_boundary(r, c)) continue;
      const auto loc = job.locate(rotation * job.pixel(r, c));
      if (!loc || on_boundary(loc->first, loc->second)) continue;
      ++total;
      if (img.label_at(r, c) == img.label_at(loc->first, loc->second)) ++agree;
    }
  }
  return total == 0 ? 1.0 : double(agree) / double(total);
}

std::vector<std::uint8_t> gray_levels(const RasterImage& img, RenderKind kind) {
  std::vector<std::uint8_t> g(img.labels.size());
  auto band = [](double score) {
    return score > 0 ? static_cast<int>(std::floor(std::log(score) / std::log(1.1))) : 0;
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::int32_t l = img.labels[i];
    const int odd = band(img.scores[i]) & 1;
    if (kind == RenderKind::Julia) {
      if (l == label::kNoTarget) g[i] = 0;
      else if (l == label::kOrbitUndetermined) g[i] = 60;
      else g[i] = static_cast<std::uint8_t>(110 + 50 * (l % 3) + 25 * odd);
    } else if (kind == RenderKind::Petals) {
      if (l >= label::kCurveBase) g[i] = 255;
      else if (l == label::kBasin) g[i] = 150;
      else g[i] = static_cast<std::uint8_t>(40 + 30 * odd);
    } else {
      switch (l) {
        case label::kConnected: g[i] = 0; break;
        case label::kUndetermined: g[i] = 90; break;
        case label::kNoConvergence: g[i] = 60; break;
        default: g[i] = static_cast<std::uint8_t>(odd ? 235 : 170);
      }
    }
  }
  return g;
}

void write_pgm(const std::string& path, const RasterImage& img, RenderKind kind) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  const auto g = gray_levels(img, kind);
  out.write(reinterpret_cast<const char*>(g.data()), static_cast<std::streamsize>(g.size()));
}

void write_png(const std::string& path, const RasterImage& img, RenderKind kind) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error(Errc::InvalidArgument, "cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw Error(Errc::InvalidArgument, "PNG encoding failed for " + path);
  }
  const auto g = gray_levels(img, kind);
  png_init_io(png, fp);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < img.height; ++r) {
    png_write_row(png, const_cast<png_bytep>(g.data() + std::size_t(r) * img.width));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

void write_label_csv(const std::string& path, const RasterImage& img) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << "row,col,label,score\n" << std::setprecision(17);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) out << r << ',' << c << ',' << img.label_at(r, c) << ',' << img.score_at(r, c) << '\n';
  }
}

std::string content_hash(const RenderJob& job) {
  const std::string body = job_text(job);
  std::string blob = "blob " + std::to_string(body.size());
  blob.push_back('\0');
  blob += body;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1) {
    throw Error(Errc::InvalidArgument, "SHA-1 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string metadata_text(const RenderJob& job, const RasterImage& img, double seconds, int threads) {
  std::map<std::int32_t, long> counts;
  for (const auto l : img.labels) ++counts[l];
  std::ostringstream os;
  os << "content_hash=" << content_hash(job) << "\n";
  os << "kind=" << to_string(job.kind) << "\n";
  os << "window_center=" << fmt(job.center) << "\n";
  os << "window_size=" << fmt(job.width) << "x" << fmt(job.height) << "\n";
  os << "resolution=" << img.width << "x" << img.height << "\n";
  os << "max_iter_hyperbolic=" << job.budget.max_iter_hyperbolic << "\n";
  os << "max_iter_parabolic=" << job.budget.max_iter_parabolic << "\n";
  os << "eps=" << fmt(job.budget.eps) << "\n";
  os << "threads=" << threads << "\n";
  os << "seconds=" << std::setprecision(6) << seconds << "\n";
  for (const auto& [l, c] : counts) os << "label_count_" << l << "=" << c << "\n";
  os << "--- job\n" << job_text(job);
  return os.str();
}

}  // namespace bicrit
