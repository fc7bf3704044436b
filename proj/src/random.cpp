#include "ggm/random.hpp"

namespace ggm {

std::size_t draw_index(std::mt19937_64& rng, const std::vector<double>& probs)
{
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) {
            continue;
        }
        acc += probs[i];
        last = i;
        if (u < acc) {
            return i;
        }
    }
    // u beyond the rounded total lands on the last positive entry
    return last;
}

} // namespace ggm
