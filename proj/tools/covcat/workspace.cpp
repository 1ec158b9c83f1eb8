// SPDX-License-Identifier: Apache-2.0
#include "workspace.hpp"

#include <algorithm>

namespace covcat::cli {

namespace {

bool is_input_format(const std::string& format) {
    return format == io::kCategoryFormat || format == io::kQuiverFormat || format == io::kFunctorFormat ||
           format == io::kAlgebraFormat;
}

}  // namespace

void Workspace::load_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw InputError("workspace " + dir.string() + " is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        io::Json document = io::read_document(path.string());
        if (is_input_format(io::document_format(document))) {
            add(path, std::move(document));
        }
    }
}

std::string Workspace::load_file(const std::filesystem::path& path) {
    io::Json document = io::read_document(path.string());
    const std::string format = io::document_format(document);
    if (!is_input_format(format)) {
        throw InputError(path.string() + ": unsupported document format \"" + format + "\"");
    }
    const std::string name = io::document_name(document, path.stem().string());
    if (const auto it = entries_.find(name); it != entries_.end()) {
        if (std::filesystem::equivalent(it->second.path, path)) {
            return name;
        }
    }
    return add(path, std::move(document));
}

std::string Workspace::add(const std::filesystem::path& path, io::Json document) {
    const std::string name = io::document_name(document, path.stem().string());
    if (entries_.contains(name)) {
        throw InputError("document name \"" + name + "\" is defined by both " + entries_.at(name).path + " and " +
                         path.string());
    }
    entries_.emplace(name, Entry{path.string(), std::move(document)});
    return name;
}

const Workspace::Entry* Workspace::find(const std::string& name) const {
    const auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

bool Workspace::has_category(const std::string& name) const {
    const Entry* e = find(name);
    if (e == nullptr) {
        return false;
    }
    const std::string format = io::document_format(e->document);
    return format == io::kCategoryFormat || format == io::kQuiverFormat;
}

bool Workspace::has_functor(const std::string& name) const {
    const Entry* e = find(name);
    return e != nullptr && io::document_format(e->document) == io::kFunctorFormat;
}

const io::QuiverDocument& Workspace::quiver(const std::string& name) {
    if (const auto it = quivers_.find(name); it != quivers_.end()) {
        return it->second;
    }
    const Entry* e = find(name);
    if (e == nullptr || io::document_format(e->document) != io::kQuiverFormat) {
        throw InputError("unknown quiver \"" + name + "\"");
    }
    return quivers_.emplace(name, io::quiver_from_json(e->document)).first->second;
}

CategoryPtr Workspace::category(const std::string& name) {
    if (const auto it = categories_.find(name); it != categories_.end()) {
        return it->second;
    }
    if (!has_category(name)) {
        throw InputError("unknown category \"" + name + "\"");
    }
    const Entry& e = *find(name);
    CategoryPtr c;
    if (io::document_format(e.document) == io::kQuiverFormat) {
        const io::QuiverDocument& q = quiver(name);
        try {
            c = path_category(q.quiver, q.relations, q.field).category;
        } catch (const std::invalid_argument& err) {
            throw io::DocumentError(e.path + ": " + err.what());
        }
    } else {
        try {
            c = std::make_shared<const LinearCategory>(io::category_from_json(e.document));
        } catch (const io::DocumentError& err) {
            throw io::DocumentError(e.path + ": " + err.what());
        }
    }
    return categories_.emplace(name, c).first->second;
}

const LinearFunctor& Workspace::functor(const std::string& name) {
    if (const auto it = functors_.find(name); it != functors_.end()) {
        return it->second;
    }
    if (!has_functor(name)) {
        throw InputError("unknown functor \"" + name + "\"");
    }
    const Entry& e = *find(name);
    const auto side = [&](const char* key) {
        if (!e.document.contains(key) || !e.document.at(key).is_string()) {
            throw io::DocumentError(e.path + ": functor needs a \"" + std::string(key) + "\" category name");
        }
        const std::string ref = e.document.at(key).get<std::string>();
        if (!has_category(ref)) {
            throw InputError(e.path + ": functor \"" + name + "\" refers to unknown category \"" + ref + "\"");
        }
        return category(ref);
    };
    const CategoryPtr source = side("source");
    const CategoryPtr target = side("target");
    if (!(source->field() == target->field())) {
        throw InputError(e.path + ": source and target of \"" + name + "\" are over different fields");
    }
    try {
        return functors_.emplace(name, io::functor_from_json(e.document, source, target)).first->second;
    } catch (const io::DocumentError& err) {
        throw io::DocumentError(e.path + ": " + err.what());
    }
}

io::AlgebraDocument Workspace::algebra(const std::string& name) const {
    const Entry* e = find(name);
    if (e == nullptr || io::document_format(e->document) != io::kAlgebraFormat) {
        throw InputError("unknown algebra \"" + name + "\"");
    }
    io::AlgebraDocument doc = io::algebra_from_json(e->document);
    if (doc.name.empty()) {
        doc.name = name;
    }
    return doc;
}

std::string Workspace::category_name(const CategoryPtr& c) const {
    for (const auto& [name, ptr] : categories_) {
        if (ptr == c) {
            return name;
        }
    }
    return {};
}

}  // namespace covcat::cli
