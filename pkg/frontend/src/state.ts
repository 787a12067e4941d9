/** Shared view state: hover, pinned component, color mode. */

import type { ColorMode, ComponentPayload } from "./types.js";

export interface ViewState {
  hoveredId: string | null;
  pinnedFocal: string | null;
  pinnedComponent: ReadonlySet<string> | null;
  colorMode: ColorMode;
}

type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState = {
    hoveredId: null,
    pinnedFocal: null,
    pinnedComponent: null,
    colorMode: "label",
  };
  private listeners: Listener[] = [];

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  setHover(id: string | null): void {
    if (id !== this.state.hoveredId) this.emit({ hoveredId: id });
  }

  setColorMode(mode: ColorMode): void {
    if (mode !== this.state.colorMode) this.emit({ colorMode: mode });
  }

  /**
   * Double-click contract: first double-click pins the focal's same-label
   * component (exactly the /api/component response); any second double-click
   * clears the pin.
   */
  async toggleComponentPin(
    id: string,
    fetchComponent: (id: string) => Promise<ComponentPayload>,
  ): Promise<void> {
    if (this.state.pinnedComponent !== null) {
      this.emit({ pinnedFocal: null, pinnedComponent: null });
      return;
    }
    const payload = await fetchComponent(id);
    this.emit({
      pinnedFocal: payload.focalId,
      pinnedComponent: new Set(payload.componentIds),
    });
  }
}
