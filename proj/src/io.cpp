#include "grouprec/io.hpp"

#include <stdexcept>

#include "grouprec/sampling.hpp"

namespace grouprec {

PermutationGroup read_group_file(const std::string& path) {
    auto seq = read_sample_file(path);  // identical line format
    return PermutationGroup::from_generators(seq.degree(), seq.samples());
}

void write_group_file(const std::string& path, const PermutationGroup& group) {
    write_sample_file(path, group.degree(), group.generators());
}

}  // namespace grouprec
