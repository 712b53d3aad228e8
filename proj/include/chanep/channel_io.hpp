#pragma once

#include <string>

#include "chanep/channel.hpp"

namespace chanep {

struct NamedChannel {
  std::string name;
  SuperOp channel;
};

// Channel file schema: a JSON object with "name", "repr" in
// {"kraus", "affine", "superop"}, and exactly the representation keys that
// match repr ("kraus"; "shift" + "distortion"; "superop"). Complex numbers are
// [re, im] pairs. Any mismatch raises ValidationError.
NamedChannel load_channel_json(const std::string& path);

void save_channel_json_affine(const std::string& path, const std::string& name,
                              const SuperOp& s);
void save_channel_json_superop(const std::string& path, const std::string& name,
                               const SuperOp& s);
void save_channel_json_kraus(const std::string& path, const std::string& name,
                             const KrausSet& kraus);

// Fixture name, parameterized fixture, or path to a channel JSON file.
SuperOp resolve_channel(const std::string& name_or_path);

}  // namespace chanep
