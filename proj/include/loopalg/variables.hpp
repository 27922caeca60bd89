#pragma once

#include "loopalg/errors.hpp"

#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace loopalg {

// Index into a session variable table.
struct VarId {
    std::uint32_t index = 0;
    friend auto operator<=>(const VarId&, const VarId&) = default;
};

using VarSet = std::set<VarId>;

// The alphabet of a session. Variables are registered once, in order, and
// referenced by index everywhere else; display names must be unique.
class VarTable {
  public:
    VarId add(std::string name) {
        // names must fit the term grammar: letter { letter | digit }
        bool ok = !name.empty() && std::isalpha(static_cast<unsigned char>(name[0]));
        for (char c : name)
            ok = ok && std::isalnum(static_cast<unsigned char>(c));
        if (!ok)
            throw usage_error("invalid variable name: '" + name + "'");
        if (index_.count(name))
            throw usage_error("duplicate variable name: " + name);
        VarId id{static_cast<std::uint32_t>(names_.size())};
        index_.emplace(name, id.index);
        names_.push_back(std::move(name));
        return id;
    }

    std::optional<VarId> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end())
            return std::nullopt;
        return VarId{it->second};
    }

    const std::string& name(VarId v) const {
        if (v.index >= names_.size())
            throw usage_error("variable index out of range");
        return names_[v.index];
    }

    std::size_t size() const { return names_.size(); }

  private:
    std::vector<std::string> names_;
    std::map<std::string, std::uint32_t> index_;
};

} // namespace loopalg
