// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "covcat/io.hpp"

namespace covcat::cli {

/// Input that cannot be resolved: unknown names, clashes, bad documents.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Named documents available to a command. Categories come from lincat/v1
/// and quiver/v1 documents, functors from linfun/v1 documents; both are
/// resolved on first use and cached, so every functor sees the same
/// category values.
class Workspace {
public:
    struct Entry {
        std::string path;
        io::Json document;
    };

    /// Loads every *.json file of `dir` in file-name order. Documents whose
    /// format is not a workspace input (reports, certificates) are skipped.
    void load_directory(const std::filesystem::path& dir);
    /// Loads one file; returns the document name.
    std::string load_file(const std::filesystem::path& path);

    [[nodiscard]] bool has_category(const std::string& name) const;
    [[nodiscard]] bool has_functor(const std::string& name) const;
    [[nodiscard]] const Entry* find(const std::string& name) const;

    [[nodiscard]] CategoryPtr category(const std::string& name);
    [[nodiscard]] const LinearFunctor& functor(const std::string& name);
    [[nodiscard]] const io::QuiverDocument& quiver(const std::string& name);
    [[nodiscard]] io::AlgebraDocument algebra(const std::string& name) const;

    /// The name under which a category value was loaded.
    [[nodiscard]] std::string category_name(const CategoryPtr& c) const;

private:
    std::string add(const std::filesystem::path& path, io::Json document);

    std::map<std::string, Entry> entries_;
    std::map<std::string, CategoryPtr> categories_;
    std::map<std::string, LinearFunctor> functors_;
    std::map<std::string, io::QuiverDocument> quivers_;
};

}  // namespace covcat::cli
