#pragma once

#include <string>

#include "voa/shipped_data.hpp"
#include "voa/validate.hpp"

namespace voa::testing {

inline AlgebraPresentation load_shipped(const std::string& name) {
    for (const auto& [n, text] : shipped::all) {
        if (n != name) continue;
        LoadResult lr = load_presentation(text);
        if (!lr.presentation) {
            std::string msg = "failed to load " + name + ":";
            for (const auto& d : lr.diagnostics) msg += "\n  " + d.to_string();
            throw std::runtime_error(msg);
        }
        return *lr.presentation;
    }
    throw std::runtime_error("no shipped algebra named " + name);
}

}  // namespace voa::testing
