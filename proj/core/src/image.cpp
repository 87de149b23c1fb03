#include "pftrack/image.hpp"

#include <algorithm>
#include <fstream>

namespace pftrack {

std::optional<RegionRect> clamp_region(const RegionRect& region, int width, int height)
{
    const int x0 = std::max(region.x, 0);
    const int y0 = std::max(region.y, 0);
    const int x1 = std::min(region.x + region.w, width);
    const int y1 = std::min(region.y + region.h, height);
    if (x1 <= x0 || y1 <= y0)
        return std::nullopt;
    return RegionRect{x0, y0, x1 - x0, y1 - y0};
}

namespace {

int read_ppm_token(std::istream& in)
{
    // skips whitespace and '#' comments between header fields
    while (in) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value = -1;
    in >> value;
    return value;
}

} // namespace

ImageBuffer load_ppm(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailure("cannot open " + path);

    std::string magic;
    in >> magic;
    if (magic != "P6")
        throw IoFailure(path + ": not a binary PPM (P6) file");

    const int width = read_ppm_token(in);
    const int height = read_ppm_token(in);
    const int maxval = read_ppm_token(in);
    if (width <= 0 || height <= 0 || maxval != 255)
        throw IoFailure(path + ": unsupported PPM header");
    in.get(); // single whitespace after maxval

    ImageBuffer img(width, height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw IoFailure(path + ": truncated pixel data");
    return img;
}

void save_ppm(const ImageBuffer& img, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoFailure("cannot open " + path + " for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out)
        throw IoFailure("write failed: " + path);
}

} // namespace pftrack
