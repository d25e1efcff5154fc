#include "aesclass/gf256.hpp"

namespace aesclass {

ProductTable::ProductTable() {
    for (unsigned a = 0; a < 256; ++a) {
        for (unsigned b = 0; b < 256; ++b) {
            table_[(a << 8) | b] =
                gf_mul(GFByte(static_cast<std::uint8_t>(a)),
                       GFByte(static_cast<std::uint8_t>(b)))
                    .value;
        }
    }
}

const ProductTable& ProductTable::instance() {
    static const ProductTable table;
    return table;
}

}  // namespace aesclass
