#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mdt/mdt.hpp"
#include "mdt/panorama.hpp"
#include "mdt/png_io.hpp"
#include "mdt/transform_io.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string images;
  std::string report_path;
  std::string reference = "mdt";
  int max_iters = 200;
  double tol = 1e-12;
  bool quiet = false;
  bool verbose = false;
};

mdt::KarcherConfig solver_config(const Options& opt) {
  mdt::KarcherConfig cfg;
  cfg.max_iterations = opt.max_iters;
  cfg.gradient_tolerance = opt.tol;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mdt::Error("cannot write " + path);
  out << text;
}

ordered_json matrix_rows(const mdt::Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<mdt::Matrix> linear_parts(const mdt::TransformSet& set) {
  std::vector<mdt::Matrix> out;
  out.reserve(set.entries.size());
  for (const mdt::TransformEntry& e : set.entries) out.push_back(e.transform.linear);
  return out;
}

// Resolves --reference {mdt|index:<j>|identity} to a concrete matrix.
mdt::Matrix resolve_reference(const Options& opt, const mdt::TransformSet& set,
                              const std::vector<mdt::Matrix>& linears) {
  if (opt.reference == "mdt") {
    return mdt::compute_mdt(linears, solver_config(opt)).transform.mat();
  }
  if (opt.reference == "identity") {
    return mdt::Matrix::Identity(set.dim, set.dim);
  }
  if (opt.reference.rfind("index:", 0) == 0) {
    std::size_t j = 0;
    try {
      j = std::stoul(opt.reference.substr(6));
    } catch (const std::exception&) {
      throw mdt::SingularMatrix("invalid reference index");
    }
    if (j >= linears.size()) {
      throw mdt::SingularMatrix("reference index out of range");
    }
    return linears[j];
  }
  throw mdt::ParseError("unknown --reference value: " + opt.reference);
}

int cmd_mdt(const Options& opt) {
  mdt::TransformSet set = mdt::load_transform_set(opt.input);
  mdt::MdtResult result = mdt::compute_mdt(linear_parts(set), solver_config(opt));

  ordered_json doc;
  doc["version"] = 1;
  doc["dim"] = set.dim;
  doc["T"] = matrix_rows(result.transform.mat());
  doc["objective"] = result.objective;
  ordered_json baselines = ordered_json::array();
  for (double b : result.baseline_objectives) baselines.push_back(b);
  doc["baseline_objectives"] = std::move(baselines);
  doc["solver"] = {{"iterations", result.solver.iterations},
                   {"final_gradient_norm", result.solver.final_gradient_norm},
                   {"frechet_objective", result.solver.objective}};
  const std::string text = doc.dump(2) + "\n";
  if (!opt.output.empty()) write_text(opt.output, text);
  if (!opt.quiet) {
    std::cout << "mean distorting transform (" << set.dim << "x" << set.dim
              << "), objective " << result.objective << " after "
              << result.solver.iterations << " iterations\n";
    if (opt.verbose || opt.output.empty()) std::cout << text;
  }
  return 0;
}

int cmd_report(const Options& opt) {
  mdt::TransformSet set = mdt::load_transform_set(opt.input);
  std::vector<mdt::Matrix> linears = linear_parts(set);
  mdt::Matrix ref = resolve_reference(opt, set, linears);
  mdt::Matrix ref_inv = ref.inverse();

  ordered_json doc;
  doc["reference"] = opt.reference;
  ordered_json per = ordered_json::array();
  double total = 0.0;
  for (const mdt::TransformEntry& e : set.entries) {
    mdt::Matrix corrected = ref_inv * e.transform.linear;
    ordered_json row;
    row["id"] = e.id;
    if (set.dim == 2) {
      mdt::DistortionBreakdown b = mdt::distortion_breakdown_2d(corrected);
      row["total"] = b.total;
      row["angular"] = b.angular;
      row["areal"] = b.areal;
      total += b.total * b.total;
    } else {
      const double d = mdt::fisher_distortion(corrected);
      row["total"] = d;
      total += d * d;
    }
    per.push_back(std::move(row));
  }
  doc["per_transform"] = std::move(per);
  doc["total_squared"] = total;
  const std::string text = doc.dump(2) + "\n";
  if (!opt.output.empty()) write_text(opt.output, text);
  if (!opt.quiet) {
    std::cout << "reference " << opt.reference << ": total squared distortion "
              << total << "\n";
    for (const auto& row : doc["per_transform"]) {
      std::cout << "  " << row["id"].get<std::string>() << "  total "
                << row["total"].get<double>();
      if (row.contains("angular")) {
        std::cout << "  angular " << row["angular"].get<double>() << "  areal "
                  << row["areal"].get<double>();
      }
      std::cout << "\n";
    }
  }
  return 0;
}

mdt::PanoramaInput load_panorama(const Options& opt, const mdt::TransformSet& set,
                                 bool need_pixels) {
  mdt::PanoramaInput input;
  input.images.reserve(set.entries.size());
  for (const mdt::TransformEntry& e : set.entries) {
    mdt::PanoramaImage img;
    img.id = e.id;
    if (!opt.images.empty()) {
      const fs::path path = fs::path(opt.images) / (e.id + ".png");
      mdt::ImageBuffer buf = mdt::read_png(path.string());
      img.width = buf.width;
      img.height = buf.height;
      img.pixels = std::move(buf);
    } else if (need_pixels) {
      throw mdt::Error("--images is required for compose");
    } else {
      img.width = 1;  // placeholder extent; shift aligns the origins
      img.height = 1;
    }
    input.images.push_back(std::move(img));
    input.transforms.push_back(e.transform);
  }
  return input;
}

int cmd_rereference(const Options& opt, bool compose_png) {
  mdt::TransformSet set = mdt::load_transform_set(opt.input);
  if (set.dim != 2) throw mdt::UnsupportedDimension("panorama commands need dim 2");
  mdt::PanoramaInput input = load_panorama(opt, set, compose_png);
  mdt::CorrectionResult result = mdt::rereference(input, solver_config(opt));

  mdt::TransformSet corrected;
  corrected.dim = 2;
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    corrected.entries.push_back(
        {set.entries[i].id, result.corrected_transforms[i]});
  }

  if (compose_png) {
    mdt::CompositeResult canvas = mdt::composite(input, result);
    if (opt.output.empty()) throw mdt::Error("--output PNG path is required");
    mdt::write_png(canvas.canvas, opt.output);
    if (!opt.quiet) {
      std::cout << "wrote " << opt.output << " (" << canvas.canvas.width << "x"
                << canvas.canvas.height << ", origin " << canvas.origin.x()
                << "," << canvas.origin.y() << ")\n";
    }
  } else if (!opt.output.empty()) {
    mdt::save_transform_set(corrected, opt.output);
  }
  if (!opt.report_path.empty()) {
    write_text(opt.report_path, mdt::serialize_report(result.report));
  }
  if (!opt.quiet) std::cout << mdt::format_report_table(result.report);
  return 0;
}

int cmd_estimate(const Options& opt) {
  std::vector<mdt::CorrespondenceEntry> entries =
      mdt::load_correspondences(opt.input);
  mdt::TransformSet set;
  set.dim = 2;
  for (const mdt::CorrespondenceEntry& e : entries) {
    mdt::AffineFit fit = mdt::estimate_affine(e.pairs);
    set.entries.push_back({e.from_id + ":" + e.to_id, fit.transform});
    if (!opt.quiet) {
      std::cout << e.from_id << " -> " << e.to_id << ": residual RMS "
                << fit.rms << " over " << e.pairs.size() << " pairs\n";
    }
  }
  if (!opt.output.empty()) mdt::save_transform_set(set, opt.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean distorting transformation of affine transform sets"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", opt.input, "input file");
    if (needs_input) in->required();
    sub->add_option("--output", opt.output, "output file");
    sub->add_option("--max-iters", opt.max_iters, "solver iteration cap");
    sub->add_option("--tol", opt.tol, "solver gradient tolerance");
    sub->add_flag("--quiet", opt.quiet, "suppress console output");
    sub->add_flag("--verbose", opt.verbose, "extra console output");
  };

  CLI::App* c_mdt = app.add_subcommand("mdt", "compute the MDT of a transform set");
  add_common(c_mdt, true);

  CLI::App* c_report = app.add_subcommand("report", "distortion report under a reference");
  add_common(c_report, true);
  c_report->add_option("--reference", opt.reference,
                       "reference choice: mdt, index:<j>, or identity");

  CLI::App* c_reref = app.add_subcommand("rereference", "re-reference a panorama transform set");
  add_common(c_reref, true);
  c_reref->add_option("--images", opt.images, "directory of <id>.png images");
  c_reref->add_option("--report", opt.report_path, "write report JSON here");

  CLI::App* c_compose = app.add_subcommand("compose", "re-reference and composite a panorama PNG");
  add_common(c_compose, true);
  c_compose->add_option("--images", opt.images, "directory of <id>.png images");
  c_compose->add_option("--report", opt.report_path, "write report JSON here");

  CLI::App* c_estimate = app.add_subcommand("estimate", "estimate affine transforms from correspondences");
  add_common(c_estimate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (c_mdt->parsed()) return cmd_mdt(opt);
    if (c_report->parsed()) return cmd_report(opt);
    if (c_reref->parsed()) return cmd_rereference(opt, false);
    if (c_compose->parsed()) return cmd_rereference(opt, true);
    if (c_estimate->parsed()) return cmd_estimate(opt);
  } catch (const mdt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const mdt::ReflectionNotSupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const mdt::NoConvergence& e) {
    std::cerr << "solver did not converge: " << e.what() << " (iterations "
              << e.iterations << ", gradient norm " << e.gradient_norm << ")\n";
    return 3;
  } catch (const mdt::SingularMatrix& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mdt::NotPositiveDefinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
