#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coursegen/corpus.hpp"
#include "coursegen/expand.hpp"

namespace coursegen::slides {

struct Slide {
    std::string title;
    std::string body;

    bool operator==(const Slide&) const = default;
};

struct SlideOutline {
    std::string topic;
    std::vector<Slide> slides;
};

// Splits the expanded body of the topic at its shallowest ATX heading level
// (headings inside code fences ignored). Text before the first such heading
// becomes a leading slide titled by the object's `title` property (fallback:
// its name); a body with no headings yields that single slide. Surviving
// link directives render as plain "Title (name)" text. Throws expand errors.
SlideOutline build_slide_outline(const std::string& topic, const Corpus& corpus,
                                 std::size_t max_depth = expand::kDefaultMaxDepth);

// The outline as a JSON document {"topic": ..., "slides": [{"title", "body"}]},
// two-space indented, newline terminated.
std::string render_slides(const std::string& topic, const Corpus& corpus,
                          std::size_t max_depth = expand::kDefaultMaxDepth);

}  // namespace coursegen::slides
