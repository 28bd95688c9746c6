#pragma once

#include <array>
#include <cstddef>

namespace coevo::wellbeing {

constexpr std::size_t kBundlesPerPlan = 3;
constexpr std::size_t kSidesPerBundle = 3;
constexpr std::size_t kFoodsPerBundle = 1 + kSidesPerBundle;
constexpr std::size_t kFoodSlotsPerPlan = kBundlesPerPlan * kFoodsPerBundle;  // 12
constexpr std::size_t kSlotsPerPlan = kBundlesPerPlan * (kFoodsPerBundle + 1);  // 15

// item fields are dense indices into the owning Catalog.
struct FoodServing {
    std::size_t item = 0;
    double grams = 0;
};

struct ExerciseSlot {
    std::size_t item = 0;
    double minutes = 0;
};

// One meal (main + three sides) plus one exercise activity.
struct Bundle {
    FoodServing main;
    std::array<FoodServing, kSidesPerBundle> sides;
    ExerciseSlot exercise;
};

struct WellbeingPlan {
    std::array<Bundle, kBundlesPerPlan> bundles;
};

}  // namespace coevo::wellbeing
