#pragma once

#include "datagarden/channels.hpp"
#include "datagarden/encoder.hpp"
#include "datagarden/error.hpp"
#include "datagarden/geometry.hpp"
#include "datagarden/layout.hpp"
#include "datagarden/mapping.hpp"
#include "datagarden/scene.hpp"
#include "datagarden/survey.hpp"
