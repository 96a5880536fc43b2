#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaze4d/core/errors.hpp"
#include "gaze4d/core/obj_io.hpp"
#include "gaze4d/core/png_io.hpp"
#include "gaze4d/gaze/attention.hpp"
#include "gaze4d/pipeline/report.hpp"
#include "gaze4d/pipeline/runner.hpp"
#include "gaze4d/pipeline/session_io.hpp"
#include "gaze4d/pipeline/synthetic.hpp"
#include "gaze4d/render/dumps.hpp"
#include "gaze4d/render/rasterizer.hpp"

namespace fs = std::filesystem;
using namespace gaze4d;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTrackingLost = 3;
constexpr int kExitStream = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_override;
  int64_t seed_override = -1;
};

PipelineConfig load_config(const CommonArgs& args) {
  PipelineConfig cfg = load_pipeline_config(args.config_path);
  if (!args.out_override.empty())
    cfg.out_dir = fs::absolute(args.out_override).lexically_normal().string();
  if (args.seed_override >= 0)
    cfg.seed = static_cast<uint64_t>(args.seed_override);
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "pipeline TOML config")
      ->required();
  cmd->add_option("-o,--out", args.out_override,
                  "override the output directory");
  cmd->add_option("-s,--seed", args.seed_override, "override session.seed");
}

int cmd_generate(const CommonArgs& args) {
  PipelineConfig cfg = load_config(args);
  const GenerateSpec spec = load_generate_spec(cfg.raw);
  const std::string emitted = generate_session(cfg, spec, cfg.out_dir);
  std::cout << "session written to " << cfg.out_dir << "\n";
  std::cout << "config: " << emitted << "\n";
  return kExitOk;
}

int cmd_run(const CommonArgs& args) {
  PipelineConfig cfg = load_config(args);
  const RunSummary sum = run_session(cfg);
  std::printf("frames %d/%d, rekeys %d, updates %d/%d accepted\n",
              sum.frames_processed, sum.frames_total, sum.rekeys,
              sum.updates_accepted,
              sum.updates_accepted + sum.updates_rejected);
  std::printf("gaze mapped %zu, background %zu, skipped %zu\n",
              sum.gaze_mapped, sum.gaze_background, sum.gaze_skipped);
  std::printf("mean iterations %.2f, mean nid %.4f\n", sum.mean_iterations,
              sum.mean_nid);
  std::printf("throughput %.2f frames/s\n", sum.fps);
  if (sum.tracking_lost) {
    std::fprintf(stderr, "tracking lost at t=%.3f: %s\n", sum.lost_at,
                 sum.lost_reason.c_str());
    return kExitTrackingLost;
  }
  return kExitOk;
}

int cmd_report(const CommonArgs& args) {
  PipelineConfig cfg = load_config(args);
  const Report rep = evaluate_session(cfg);
  std::ifstream txt(cfg.out_dir + "/report.txt");
  std::cout << txt.rdbuf();
  return kExitOk;
}

int cmd_render_debug(const CommonArgs& args, int frame,
                     std::vector<double>& pose_vals) {
  PipelineConfig cfg = load_config(args);
  if (cfg.map.obj_path.empty())
    throw ConfigError("render-debug requires a [map] section");
  const SessionBundle bundle = load_session(cfg);

  Pose cam;
  double t = bundle.frame_times.front();
  if (!pose_vals.empty()) {
    cam = pose_from_array(pose_vals);
  } else {
    if (bundle.gt_camera.empty())
      throw ConfigError("render-debug needs --pose or a ground-truth track");
    if (frame < 0 || frame >= static_cast<int>(bundle.frame_times.size()))
      throw ConfigError("render-debug frame index out of range");
    t = bundle.frame_times[frame];
    // Ground truth is recorded at frame timestamps.
    cam = bundle.gt_camera.pose_at(static_cast<size_t>(
        std::min<size_t>(frame, bundle.gt_camera.size() - 1)));
  }

  auto load_inst = [](const InstanceConfig& ic) {
    SceneInstance inst;
    auto mesh = std::make_shared<TexturedMesh>(load_obj(ic.obj_path));
    mesh->texture = load_png(ic.texture_path);
    inst.instance_id = ic.instance_id;
    inst.category = ic.category;
    inst.mesh = mesh;
    inst.pose = ic.static_pose;
    inst.id_texture = {ic.id_width, ic.id_height};
    return inst;
  };
  std::vector<SceneInstance> scene = {load_inst(cfg.map)};
  for (const InstanceConfig& ic : cfg.instances) {
    SceneInstance inst = load_inst(ic);
    if (ic.dynamic) {
      const auto it = bundle.instance_tracks.find(ic.instance_id);
      if (it == bundle.instance_tracks.end()) continue;
      const auto pose = it->second.pose_at(t);
      if (!pose) continue;
      inst.pose = *pose;
    }
    scene.push_back(inst);
  }

  const RenderOutput out = render(scene, cam, cfg.camera);
  fs::create_directories(cfg.out_dir);
  save_png(out.color, cfg.out_dir + "/debug_color.png");
  save_pgm(out.instance_mask, cfg.out_dir + "/debug_mask.pgm");
  save_pfm(out.depth, cfg.out_dir + "/debug_depth.pfm");
  save_id_dump(out.surface_id, cfg.out_dir + "/debug_surface_id.bin");
  std::cout << "debug buffers written to " << cfg.out_dir << "\n";
  return kExitOk;
}

int cmd_heatmap(const CommonArgs& args, int instance_id) {
  PipelineConfig cfg = load_config(args);
  char base[64];
  std::snprintf(base, sizeof(base), "attention_%03d.bin", instance_id);
  const std::string bin = cfg.out_dir + "/" + base;
  if (!fs::exists(bin))
    throw StreamError("no attention texture at " + bin + "; run first");
  const AttentionTexture att =
      load_attention(static_cast<uint8_t>(instance_id), bin);
  const std::string png =
      cfg.out_dir + "/heatmap_" + std::to_string(instance_id) + ".png";
  save_png_gray(attention_heatmap(att.counts), png);
  std::cout << png << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaze-to-surface mapping pipeline"};
  app.require_subcommand(1);

  CommonArgs gen_args, run_args, rep_args, dbg_args, heat_args;
  int dbg_frame = 0;
  std::vector<double> dbg_pose;
  int heat_instance = 1;

  add_common(app.add_subcommand("generate",
                                "synthesize a session from a [generate] config"),
             gen_args);
  add_common(app.add_subcommand("run", "track, fuse and map a session"),
             run_args);
  add_common(app.add_subcommand("report", "evaluate run artifacts"),
             rep_args);
  CLI::App* dbg =
      app.add_subcommand("render-debug", "dump render buffers for one view");
  add_common(dbg, dbg_args);
  dbg->add_option("-f,--frame", dbg_frame, "frame index (ground-truth pose)");
  dbg->add_option("-p,--pose", dbg_pose,
                  "explicit camera pose: tx ty tz qx qy qz qw")
      ->expected(7);
  CLI::App* heat = app.add_subcommand(
      "heatmap", "rebuild a heatmap PNG from a saved attention texture");
  add_common(heat, heat_args);
  heat->add_option("-i,--instance", heat_instance, "instance id")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("generate")) return cmd_generate(gen_args);
    if (app.got_subcommand("run")) return cmd_run(run_args);
    if (app.got_subcommand("report")) return cmd_report(rep_args);
    if (app.got_subcommand("render-debug"))
      return cmd_render_debug(dbg_args, dbg_frame, dbg_pose);
    if (app.got_subcommand("heatmap"))
      return cmd_heatmap(heat_args, heat_instance);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const TrackingLostError& e) {
    std::fprintf(stderr, "tracking lost: %s\n", e.what());
    return kExitTrackingLost;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitStream;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitStream;
  }
  return kExitOk;
}
