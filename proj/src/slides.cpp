#include "coursegen/slides.hpp"

#include "coursegen/markdown.hpp"
#include "json.hpp"

namespace coursegen::slides {

namespace {

std::string trimmed(std::string s) {
    const char* ws = " \t\r\n";
    std::size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

SlideOutline build_slide_outline(const std::string& topic, const Corpus& corpus,
                                 std::size_t max_depth) {
    expand::ExpandedBody expanded = expand::expand(topic, corpus, max_depth);
    const CGLO* obj = corpus.find_active(topic);
    if (obj == nullptr) obj = corpus.resolve(topic).object;

    SlideOutline outline;
    outline.topic = obj->name;

    std::vector<md::RawSplice> splices;
    splices.reserve(expanded.remaining_links.size());
    for (const expand::RemainingLink& link : expanded.remaining_links) {
        ResolveResult r = corpus.resolve(link.target);
        std::string text;
        if (r.status == ResolveStatus::Found) {
            text = r.object->doc.title_or(r.object->name) + " (" + r.object->name + ")";
        } else {
            text = link.target;
        }
        splices.push_back({link.span, std::move(text)});
    }

    const std::string& text = expanded.text;
    md::CodeRegions regions = md::scan_code_regions(text);
    std::vector<md::HeadingInfo> headings = md::scan_headings(text, regions);
    int level = md::min_heading_level(headings);

    std::vector<const md::HeadingInfo*> tops;
    for (const md::HeadingInfo& h : headings) {
        if (h.level == level) tops.push_back(&h);
    }

    std::size_t preamble_end = tops.empty() ? text.size() : tops.front()->line.begin;
    std::string preamble = trimmed(md::render_text(text, {0, preamble_end}, splices));
    if (!preamble.empty()) {
        outline.slides.push_back({obj->doc.title_or(obj->name), std::move(preamble)});
    }

    for (std::size_t i = 0; i < tops.size(); ++i) {
        md::Span body_span{tops[i]->line.end,
                           i + 1 < tops.size() ? tops[i + 1]->line.begin : text.size()};
        outline.slides.push_back(
            {trimmed(md::render_text(text, tops[i]->content, splices)),
             trimmed(md::render_text(text, body_span, splices))});
    }
    return outline;
}

std::string render_slides(const std::string& topic, const Corpus& corpus,
                          std::size_t max_depth) {
    SlideOutline outline = build_slide_outline(topic, corpus, max_depth);
    nlohmann::ordered_json doc;
    doc["topic"] = outline.topic;
    nlohmann::ordered_json slides = nlohmann::ordered_json::array();
    for (const Slide& slide : outline.slides) {
        nlohmann::ordered_json s;
        s["title"] = slide.title;
        s["body"] = slide.body;
        slides.push_back(std::move(s));
    }
    doc["slides"] = std::move(slides);
    return doc.dump(2) + "\n";
}

}  // namespace coursegen::slides
