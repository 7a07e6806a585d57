#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace bobmpc {

using TagId = std::int32_t;

// Instance kinds; protocol state machines are addressed by a path of
// (parent, kind, index) triples interned into dense ids.
enum class Kind : std::uint8_t {
  Root,
  Acast,
  Sba,
  Bc,
  Vote,
  Coin,
  Aba,
  Ba,
  Wps,
  Vss,
  Acs,
  Beaver,
  TripTrans,
  TripSh,
  Preproc,
  CirEval,
};

const char* kind_name(Kind k);

class TagTable {
 public:
  struct Info {
    TagId parent;
    Kind kind;
    int index;
  };

  TagId intern(TagId parent, Kind kind, int index) {
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(parent)) << 32) |
                        (static_cast<std::uint64_t>(static_cast<std::uint8_t>(kind)) << 24) |
                        static_cast<std::uint32_t>(index & 0xffffff);
    auto it = lookup_.find(key);
    if (it != lookup_.end()) return it->second;
    TagId id = static_cast<TagId>(infos_.size());
    infos_.push_back(Info{parent, kind, index});
    lookup_.emplace(key, id);
    return id;
  }

  // Lookup without creating; -1 when the tag was never interned.
  TagId find(TagId parent, Kind kind, int index) const {
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(parent)) << 32) |
                        (static_cast<std::uint64_t>(static_cast<std::uint8_t>(kind)) << 24) |
                        static_cast<std::uint32_t>(index & 0xffffff);
    auto it = lookup_.find(key);
    return it == lookup_.end() ? -1 : it->second;
  }

  const Info& info(TagId id) const { return infos_[static_cast<size_t>(id)]; }
  int size() const { return static_cast<int>(infos_.size()); }

  std::string path(TagId id) const;

 private:
  std::vector<Info> infos_;
  std::unordered_map<std::uint64_t, TagId> lookup_;
};

}  // namespace bobmpc
