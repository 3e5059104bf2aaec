#pragma once

#include <enrichfp/cclass.hpp>
#include <enrichfp/contraction.hpp>
#include <enrichfp/errors.hpp>
#include <enrichfp/io.hpp>
#include <enrichfp/problems.hpp>
#include <enrichfp/rng.hpp>
#include <enrichfp/solver.hpp>
#include <enrichfp/space.hpp>
