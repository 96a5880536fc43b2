#include "gaze4d/render/scene.hpp"

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

void IdTexture::validate() const {
  if (width <= 0 || height <= 0)
    throw ConfigError("ID texture dimensions must be positive");
  const uint64_t texels = static_cast<uint64_t>(width) * height;
  if (texels >= 0xFFFFFFFFull)
    throw ConfigError("ID texture exceeds 32-bit ID range");
}

void SceneInstance::validate() const {
  if (instance_id == 0)
    throw ConfigError("instance_id 0 is reserved for background");
  if (!mesh) throw ConfigError("scene instance has no mesh");
  id_texture.validate();
}

}  // namespace gaze4d
