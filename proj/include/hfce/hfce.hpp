// hfce - hybrid-field channel estimation for extremely large aperture arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HFCE_HFCE_HPP
#define HFCE_HFCE_HPP

#include "baselines.hpp"
#include "channel.hpp"
#include "config_io.hpp"
#include "dictionary.hpp"
#include "estimator.hpp"
#include "harness.hpp"
#include "observation.hpp"
#include "random.hpp"
#include "scene_io.hpp"
#include "steering.hpp"
#include "types.hpp"

#endif // HFCE_HFCE_HPP
